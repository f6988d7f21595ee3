//! Command-line front end: evaluators, kernel predicates, derivation
//! replay, and the lantern trichotomy over JSON documents with canonical
//! text output.
//!
//! Exit codes: 0 success, 2 input schema error, 3 domain invariant
//! violation, 4 derivation failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use torelli::schema::{parse_input, parse_script, InputDoc, ScriptDoc};
use torelli::words::render_word;
use torelli::{
    check_derivation, chillingworth_membership, fixtures, lantern_classify, sigma_word,
    sip_in_bcj_kernel, sip_in_johnson_kernel, sp_shadow_check, ssip_span, tau_word, word_to_sp,
    BoolPoly, CurveId, Error, HClass, SurfaceConfig, Twist, Wedge3,
};

#[derive(Parser)]
#[command(name = "torelli", version, about = "Exact evaluation of abelian-quotient homomorphisms on factored Torelli elements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Path to a JSON input document
    #[arg(long, conflicts_with = "fixture")]
    input: Option<String>,
    /// Name of a shipped fixture
    #[arg(long)]
    fixture: Option<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Expected genus; rejected if the document disagrees
    #[arg(long)]
    genus: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Johnson homomorphism on a factorization document
    Tau(InputArgs),
    /// Evaluate the Birman-Craggs-Johnson homomorphism
    Sigma(InputArgs),
    /// Contraction of the Johnson image
    Contract(InputArgs),
    /// The Chillingworth class of the factored element
    Chillingworth(InputArgs),
    /// Kernel and membership predicates for the document
    Check(InputArgs),
    /// Homology shadow of a twist word as a symplectic matrix
    SpMatrix(InputArgs),
    /// Replay a recorded derivation script
    Derive(InputArgs),
    /// Classify a word in two twist generators on the lantern
    Classify {
        /// The word, e.g. "[a,b]", "a b a^-1", "(a b)^3"
        word: String,
        /// Comma-separated generator names
        #[arg(long, default_value = "a,b")]
        gens: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Span of the separating-SIP images under sampled coordinate changes
    SsipSpan {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// Sampling seed; required so runs are reproducible
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List shipped fixture names
    Fixtures,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::BadCurveId(_) => 2,
        Error::Derivation { .. } => 4,
        _ => 3,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Tau(args) => {
            let (f, _) = factorization(&args)?;
            print_wedge(&tau_word(&f)?, args.format);
            Ok(())
        }
        Command::Sigma(args) => {
            let (f, _) = factorization(&args)?;
            print_bool(&sigma_word(&f)?, args.format);
            Ok(())
        }
        Command::Contract(args) | Command::Chillingworth(args) => {
            let (f, _) = factorization(&args)?;
            print_class(&tau_word(&f)?.contraction(), args.format);
            Ok(())
        }
        Command::Check(args) => check_command(&args),
        Command::SpMatrix(args) => {
            let word = sp_word(&args)?;
            let m = word_to_sp(&word)?;
            match args.format {
                Format::Text => print!("{}", m),
                Format::Json => println!("{}", json!(m.rows())),
            }
            Ok(())
        }
        Command::Derive(args) => derive_command(&args),
        Command::Classify { word, gens, format } => {
            let (a, b) = parse_gens(&gens)?;
            let w = parse_twist_word(&word)?;
            let label = lantern_classify(&w, &a, &b)?;
            match format {
                Format::Text => println!("{}", label),
                Format::Json => println!("{}", json!({ "class": label.to_string() })),
            }
            Ok(())
        }
        Command::SsipSpan {
            genus,
            samples,
            seed,
            format,
        } => {
            let span = ssip_span(genus, samples, seed)?;
            match format {
                Format::Text => {
                    println!("dimension: {}", span.dimension());
                    for p in span.basis() {
                        println!("{}", p);
                    }
                }
                Format::Json => {
                    let basis: Vec<_> = span.basis().iter().map(bool_terms).collect();
                    println!(
                        "{}",
                        json!({ "dimension": span.dimension(), "basis": basis })
                    );
                }
            }
            Ok(())
        }
        Command::Fixtures => {
            for name in fixtures::fixture_names() {
                println!("{}", name);
            }
            Ok(())
        }
    }
}

fn load_json(args: &InputArgs) -> Result<String, Error> {
    match (&args.input, &args.fixture) {
        (Some(path), None) => {
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {}", path, e)))
        }
        (None, Some(name)) => fixtures::fixture_json(name)
            .map(str::to_string)
            .ok_or_else(|| Error::Parse(format!("unknown fixture '{}'", name))),
        _ => Err(Error::Parse(
            "exactly one of --input or --fixture is required".into(),
        )),
    }
}

fn input_doc(args: &InputArgs) -> Result<InputDoc, Error> {
    let doc = parse_input(&load_json(args)?)?;
    let doc_genus = match &doc {
        InputDoc::Factorization(f) => f.genus,
        InputDoc::SpWord(w) => w.genus,
    };
    if let Some(g) = args.genus {
        if g != doc_genus {
            return Err(Error::invariant(format!(
                "document genus {} does not match requested genus {}",
                doc_genus, g
            )));
        }
    }
    Ok(doc)
}

fn factorization(
    args: &InputArgs,
) -> Result<(torelli::TorelliFactorization, SurfaceConfig), Error> {
    match input_doc(args)? {
        InputDoc::Factorization(f) => {
            let (sc, fac) = f.to_factorization()?;
            Ok((fac, sc))
        }
        InputDoc::SpWord(_) => Err(Error::Parse(
            "this command expects a factorization document".into(),
        )),
    }
}

fn sp_word(args: &InputArgs) -> Result<Vec<(HClass, i64)>, Error> {
    match input_doc(args)? {
        InputDoc::SpWord(w) => w.to_word(),
        InputDoc::Factorization(_) => Err(Error::Parse(
            "this command expects a twist-word document".into(),
        )),
    }
}

fn check_command(args: &InputArgs) -> Result<(), Error> {
    match input_doc(args)? {
        InputDoc::Factorization(doc) => {
            if let Some(sip) = doc.as_single_sip()? {
                let johnson = sip_in_johnson_kernel(&sip);
                let bcj = sip_in_bcj_kernel(&sip)?;
                match args.format {
                    Format::Text => {
                        println!("johnson_kernel: {}", johnson);
                        println!("bcj_kernel: {}", bcj);
                    }
                    Format::Json => println!(
                        "{}",
                        json!({ "johnson_kernel": johnson, "bcj_kernel": bcj })
                    ),
                }
            } else {
                let (_, fac) = doc.to_factorization()?;
                let member = chillingworth_membership(&fac)?;
                match args.format {
                    Format::Text => println!("chillingworth_membership: {}", member),
                    Format::Json => {
                        println!("{}", json!({ "chillingworth_membership": member }))
                    }
                }
            }
            Ok(())
        }
        InputDoc::SpWord(doc) => {
            let shadow = torelli::is_torelli_shadow(&doc.to_word()?)?;
            match args.format {
                Format::Text => println!("torelli_shadow: {}", shadow),
                Format::Json => println!("{}", json!({ "torelli_shadow": shadow })),
            }
            Ok(())
        }
    }
}

fn derive_command(args: &InputArgs) -> Result<(), Error> {
    let doc: ScriptDoc = parse_script(&load_json(args)?)?;
    let (env, script, classes) = doc.to_parts()?;
    let end = check_derivation(&env, &script)?;
    let shadow = match &classes {
        None => None,
        Some(map) => Some(sp_shadow_check(&script.start, &script.end, map)?),
    };
    if shadow == Some(false) {
        return Err(Error::derivation(
            script.steps.len(),
            "start and end words have different homology shadows under the fixture classes"
                .to_string(),
        ));
    }
    match args.format {
        Format::Text => {
            println!("OK");
            println!("end: {}", render_word(&end));
            if shadow == Some(true) {
                println!("shadow: ok");
            }
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "verdict": "ok",
                    "end": render_word(&end),
                    "shadow": shadow,
                })
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

fn basis_names(rank: usize, indices: &[usize]) -> Vec<String> {
    let g = rank / 2;
    indices
        .iter()
        .map(|&i| {
            if i < g {
                format!("a{}", i + 1)
            } else {
                format!("b{}", i - g + 1)
            }
        })
        .collect()
}

fn print_wedge(w: &Wedge3, format: Format) {
    match format {
        Format::Text => println!("{}", w),
        Format::Json => {
            let terms: Vec<_> = w
                .terms()
                .iter()
                .map(|(m, c)| json!({ "coeff": c, "monomial": basis_names(w.rank(), m) }))
                .collect();
            println!("{}", json!({ "terms": terms, "text": w.to_string() }));
        }
    }
}

fn bool_terms(p: &BoolPoly) -> serde_json::Value {
    let mut sorted: Vec<&Vec<usize>> = p.terms().iter().collect();
    sorted.sort_by_key(|m| (m.len(), (*m).clone()));
    json!(sorted
        .iter()
        .map(|m| basis_names(p.nvars(), m))
        .collect::<Vec<_>>())
}

fn print_bool(p: &BoolPoly, format: Format) {
    match format {
        Format::Text => println!("{}", p),
        Format::Json => println!("{}", json!({ "terms": bool_terms(p), "text": p.to_string() })),
    }
}

fn print_class(c: &HClass, format: Format) {
    match format {
        Format::Text => println!("{}", c),
        Format::Json => println!("{}", json!({ "coords": c.coords(), "text": c.to_string() })),
    }
}

// ---------------------------------------------------------------------------
// word syntax for `classify`
// ---------------------------------------------------------------------------

fn parse_gens(gens: &str) -> Result<(CurveId, CurveId), Error> {
    let parts: Vec<&str> = gens.split(',').map(str::trim).collect();
    if parts.len() != 2 || parts[0].is_empty() || parts[1].is_empty() {
        return Err(Error::Parse(format!(
            "--gens expects two comma-separated names, got '{}'",
            gens
        )));
    }
    Ok((CurveId::new(parts[0])?, CurveId::new(parts[1])?))
}

/// Grammar: a word is a sequence of factors; a factor is an identifier, a
/// parenthesized word, or a commutator `[u,v]`, optionally raised to an
/// integer power with `^`.
fn parse_twist_word(input: &str) -> Result<Vec<Twist>, Error> {
    let mut parser = WordParser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let word = parser.word()?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected character '{}' at offset {}",
            parser.chars[parser.pos], parser.pos
        )));
    }
    Ok(word)
}

struct WordParser {
    chars: Vec<char>,
    pos: usize,
}

impl WordParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Vec<Twist>, Error> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' || c == ']' || c == ',' {
                break;
            }
            out.extend(self.factor()?);
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Vec<Twist>, Error> {
        let base = match self.peek() {
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                let mut w = u.clone();
                w.extend(v.clone());
                w.extend(torelli::words::invert_word(&u));
                w.extend(torelli::words::invert_word(&v));
                w
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                w
            }
            Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '\'' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '\'')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                vec![Twist::new(CurveId::new(name)?, 1)?]
            }
            other => {
                return Err(Error::Parse(format!(
                    "expected a twist factor, found {:?}",
                    other
                )))
            }
        };
        let exp = self.power()?;
        Ok(repeat_word(&base, exp))
    }

    fn power(&mut self) -> Result<i64, Error> {
        if self.chars.get(self.pos) != Some(&'^') {
            return Ok(1);
        }
        self.pos += 1;
        let mut s = String::new();
        if self.chars.get(self.pos) == Some(&'-') {
            s.push('-');
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            s.push(self.chars[self.pos]);
            self.pos += 1;
        }
        s.parse::<i64>()
            .map_err(|_| Error::Parse("malformed exponent".into()))
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{}'", c)))
        }
    }
}

fn repeat_word(base: &[Twist], exp: i64) -> Vec<Twist> {
    if exp == 0 {
        return Vec::new();
    }
    let once = if exp > 0 {
        base.to_vec()
    } else {
        torelli::words::invert_word(base)
    };
    let mut out = Vec::with_capacity(once.len() * exp.unsigned_abs() as usize);
    for _ in 0..exp.unsigned_abs() {
        out.extend(once.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_syntax() {
        let w = parse_twist_word("[a,b]").unwrap();
        assert_eq!(render_word(&w), "a b a^-1 b^-1");
        let w = parse_twist_word("(a b)^2").unwrap();
        assert_eq!(render_word(&w), "a b a b");
        let w = parse_twist_word("a^-2 b'").unwrap();
        assert_eq!(render_word(&w), "a^-1 a^-1 b'");
        let w = parse_twist_word("[a, b]^-1").unwrap();
        assert_eq!(render_word(&w), "b a b^-1 a^-1");
        assert!(parse_twist_word("[a b").is_err());
        assert!(parse_twist_word("a )").is_err());
    }
}
