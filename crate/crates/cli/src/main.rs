//! `orbitcode`: build, analyze and verify cyclic orbit codes from the command line.
//!
//! Exit codes: 0 success, 2 usage, parse or I/O error, 3 domain error,
//! 4 verification mismatch.

mod report;
mod selfcheck;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orbitcode::matspace::Mat;
use orbitcode::orbitcode::{
    analyze, build_spread_start, export_code, generate_orbit, min_distance_brute, min_distance_of,
    parse_code_export,
};
use orbitcode::polyring::{is_irreducible, is_primitive, list_irreducibles, order_of_polynomial};
use orbitcode::{Error, ExtensionContext, FieldSpec, Poly, Subspace};

use report::ReportDocument;

#[derive(Parser)]
#[command(
    name = "orbitcode",
    version,
    about = "Irreducible cyclic orbit codes over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polynomial queries over F_q.
    Poly {
        #[command(subcommand)]
        query: PolyQuery,
    },
    /// Build the spread code of k-subspaces of F_q^n from a primitive polynomial.
    Spread {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        /// Primitive polynomial of degree n.
        #[arg(short)]
        p: String,
        /// Also compute the distance by brute force and compare.
        #[arg(long)]
        verify: bool,
        /// Write the code in export format to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Predict cardinality and distance of the orbit of a subspace; prints a JSON report.
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        /// Irreducible polynomial whose companion matrix generates the group.
        #[arg(short)]
        p: String,
        #[command(flatten)]
        start: StartArgs,
        /// Run the brute-force oracle and record whether it agrees.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the orbit of a subspace and export its codewords.
    Orbit {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short)]
        p: String,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distance of an exported code, by brute force.
    Distance {
        /// Field size; defaults to the file header, which then must be prime.
        #[arg(short)]
        q: Option<u64>,
        #[arg(long)]
        base_modulus: Option<String>,
        file: PathBuf,
    },
    /// Run the built-in battery of worked examples.
    Selfcheck,
}

#[derive(Subcommand)]
enum PolyQuery {
    /// Print whether the polynomial is irreducible.
    Irreducible {
        #[command(flatten)]
        field: FieldArgs,
        poly: String,
    },
    /// Print the order of an irreducible polynomial.
    Order {
        #[command(flatten)]
        field: FieldArgs,
        poly: String,
    },
    /// Print whether the polynomial is primitive.
    Primitive {
        #[command(flatten)]
        field: FieldArgs,
        poly: String,
    },
    /// List all monic irreducible polynomials of degree n.
    List {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short)]
        n: usize,
    },
}

#[derive(Args)]
struct FieldArgs {
    /// Size of the base field: a prime, or a prime power with --base-modulus.
    #[arg(short)]
    q: u64,
    /// Irreducible polynomial over Z_p defining F_q when q = p^r, r > 1.
    #[arg(long)]
    base_modulus: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StartArgs {
    /// File holding the starting rows in matrix text format.
    #[arg(long)]
    start: Option<PathBuf>,
    /// Starting rows inline, separated by `;`, e.g. "1000;0011".
    #[arg(long)]
    rows: Option<String>,
}

enum Failure {
    Usage(String),
    Domain(String),
    Mismatch(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Outcome<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))
        }
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q)
}

fn base_field(q: u64, base_modulus: Option<&str>) -> Outcome<FieldSpec> {
    if q < 2 {
        return Err(Failure::Usage(format!(
            "field size {} is not a prime power",
            q
        )));
    }
    let p = smallest_prime_factor(q);
    let mut r = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    if rest != 1 {
        return Err(Failure::Usage(format!(
            "field size {} is not a prime power",
            q
        )));
    }
    let prime = FieldSpec::prime(p)?;
    match (r, base_modulus) {
        (1, None) => Ok(prime),
        (1, Some(_)) => Err(Failure::Usage(format!(
            "q = {} is prime; --base-modulus does not apply",
            q
        ))),
        (_, None) => Err(Failure::Usage(format!(
            "q = {} is not prime; pass --base-modulus with an irreducible of degree {} over Z_{}",
            q, r, p
        ))),
        (_, Some(m)) => {
            let m = Poly::parse(&prime, m)?;
            if m.degree() != Some(r) {
                return Err(Failure::Usage(format!(
                    "base modulus {} must have degree {} for q = {}",
                    m, r, q
                )));
            }
            Ok(prime.extend(&m)?)
        }
    }
}

fn field_of(args: &FieldArgs) -> Outcome<FieldSpec> {
    base_field(args.q, args.base_modulus.as_deref())
}

fn start_subspace(field: &FieldSpec, args: &StartArgs) -> Outcome<Subspace> {
    let text = match (&args.start, &args.rows) {
        (Some(path), _) => read(path)?,
        (None, Some(rows)) => rows.replace(';', "\n"),
        (None, None) => unreachable!("clap enforces one start source"),
    };
    let m = Mat::parse(field, &text)?;
    let rank = m.rank();
    if rank < m.rows() {
        return Err(Failure::Domain(format!(
            "starting rows are dependent: rank {} < {} rows",
            rank,
            m.rows()
        )));
    }
    Ok(Subspace::from_rows(&m))
}

fn context(field: &FieldSpec, p: &str) -> Outcome<(Poly, ExtensionContext)> {
    let p = Poly::parse(field, p)?;
    let ctx = ExtensionContext::new(&p)?;
    Ok((p, ctx))
}

fn run_poly(query: PolyQuery) -> Outcome<()> {
    match query {
        PolyQuery::Irreducible { field, poly } => {
            let f = field_of(&field)?;
            println!("{}", is_irreducible(&Poly::parse(&f, &poly)?)?);
        }
        PolyQuery::Order { field, poly } => {
            let f = field_of(&field)?;
            println!("{}", order_of_polynomial(&Poly::parse(&f, &poly)?)?);
        }
        PolyQuery::Primitive { field, poly } => {
            let f = field_of(&field)?;
            let answer = match is_primitive(&Poly::parse(&f, &poly)?) {
                Ok(b) => b,
                Err(Error::Reducible(_) | Error::ZeroConstantTerm(_)) => false,
                Err(e) => return Err(e.into()),
            };
            println!("{}", answer);
        }
        PolyQuery::List { field, n } => {
            let f = field_of(&field)?;
            for p in list_irreducibles(&f, n)? {
                println!("{}", p);
            }
        }
    }
    Ok(())
}

fn one_line(u: &Subspace) -> String {
    u.to_string().replace('\n', ";")
}

fn run_spread(
    field: FieldArgs,
    n: usize,
    k: usize,
    p: String,
    verify: bool,
    out: Option<PathBuf>,
) -> Outcome<()> {
    let f = field_of(&field)?;
    let (poly, ctx) = context(&f, &p)?;
    let u = build_spread_start(k, n, &poly)?;
    let report = analyze(&u, &ctx)?;
    let code = generate_orbit(&u, &ctx.companion())?;
    println!("start {}", one_line(&u));
    println!("cardinality {}", code.cardinality());
    match report.predicted_distance {
        Some(d) => println!("distance {}", d),
        None => println!("distance none"),
    }
    println!("spread {}", report.spread);
    if let Some(path) = &out {
        write_or_print(Some(path), &export_code(&code))?;
    }
    if verify {
        let brute = (code.cardinality() > 1)
            .then(|| min_distance_brute(&code))
            .transpose()?;
        let agrees = brute == report.predicted_distance
            && code.cardinality() as u64 == report.predicted_cardinality;
        println!("verified {}", agrees);
        if !agrees {
            return Err(Failure::Mismatch(format!(
                "oracle distance {:?}, predicted {:?}",
                brute, report.predicted_distance
            )));
        }
    }
    Ok(())
}

fn run_analyze(
    field: FieldArgs,
    p: String,
    start: StartArgs,
    verify: bool,
    out: Option<PathBuf>,
) -> Outcome<()> {
    let f = field_of(&field)?;
    let (poly, ctx) = context(&f, &p)?;
    let u = start_subspace(&f, &start)?;
    let mut report = analyze(&u, &ctx)?;
    if verify {
        report.verify_with(&generate_orbit(&u, &ctx.companion())?)?;
    }
    let doc = ReportDocument::new(&f, &poly, &u, report);
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    write_or_print(out.as_deref(), &text)?;
    if doc.agreement == Some(false) {
        return Err(Failure::Mismatch(
            "prediction disagrees with the brute-force oracle".into(),
        ));
    }
    Ok(())
}

fn run_orbit(field: FieldArgs, p: String, start: StartArgs, out: Option<PathBuf>) -> Outcome<()> {
    let f = field_of(&field)?;
    let (_, ctx) = context(&f, &p)?;
    let u = start_subspace(&f, &start)?;
    let code = generate_orbit(&u, &ctx.companion())?;
    let text = export_code(&code);
    match &out {
        Some(path) => {
            write_or_print(Some(path), &text)?;
            println!("cardinality {}", code.cardinality());
        }
        None => print!("{}", text),
    }
    Ok(())
}

fn run_distance(q: Option<u64>, base_modulus: Option<String>, file: PathBuf) -> Outcome<()> {
    let text = read(&file)?;
    let q = match q {
        Some(q) => q,
        None => text
            .split_whitespace()
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Failure::Usage(format!("{}: missing header", file.display())))?,
    };
    let f = base_field(q, base_modulus.as_deref())?;
    let code = parse_code_export(&f, &text)?;
    println!("{}", min_distance_of(&code.codewords)?);
    Ok(())
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::Poly { query } => run_poly(query),
        Command::Spread {
            field,
            n,
            k,
            p,
            verify,
            out,
        } => run_spread(field, n, k, p, verify, out),
        Command::Analyze {
            field,
            p,
            start,
            verify,
            out,
        } => run_analyze(field, p, start, verify, out),
        Command::Orbit {
            field,
            p,
            start,
            out,
        } => run_orbit(field, p, start, out),
        Command::Distance {
            q,
            base_modulus,
            file,
        } => run_distance(q, base_modulus, file),
        Command::Selfcheck => match selfcheck::run() {
            0 => Ok(()),
            n => Err(Failure::Mismatch(format!("{} selfcheck item(s) failed", n))),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
