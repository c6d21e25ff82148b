//! Argument parsing and dispatch for the `acmq` binary. Every verdict comes
//! from the core library; this layer reads inputs and formats reports.
//!
//! Exit codes: 0 when the checked property holds, 1 when it is falsified,
//! 2 on usage or input errors.

mod corpus;
mod input;

use std::fmt::Write as _;
use std::path::PathBuf;

use acmq::algebra::{format_rational, poly_parse, Polynomial};
use acmq::pfaffian::{PolyMatrix, SkewPolyMatrix};
use acmq::picard::{format_reduced_poly, CohomologyFlags, DivisorClass, PicardLattice, WatanabeCase};
use acmq::schemes::{self, AgVerdict, Degree8Class, HilbertProfile, PointScheme};
use acmq::surface::{
    self, build_phi_n8, pfaffian_rep_from_quadrics, quadric_product_sum, smoothness_probe, verify_representation,
    PrimeVerdict, QuarticSurface, Representation, SurfaceError, VerifyOutcome,
};
use acmq::Rational;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use corpus::corpus_generate;

pub const VERIFIED: u8 = 0;
pub const FALSIFIED: u8 = 1;
pub const USAGE_ERROR: u8 = 2;

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "acmq",
    version,
    about = "Exact checks for pfaffian quartics, degree-8 point schemes and Picard lattices"
)]
struct Cli {
    /// Print a JSON verdict object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quartic surfaces: representations, the order-8 block matrix, smoothness.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Finite point schemes in P^3.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Picard lattices of quartic surfaces.
    #[command(subcommand)]
    Picard(PicardCmd),
    /// Skew-symmetric polynomial matrices.
    #[command(subcommand)]
    Pfaffian(PfaffianCmd),
    /// Write the built-in example inputs to a directory.
    Corpus {
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-run the command recorded in a JSON report.
    Replay { report: String },
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Skew 4x4 matrix of linear forms with pfaffian q1q2 + q3q4 + q5q6.
    BuildPfaffian {
        /// Six quadrics: a JSON array of strings or {"quadrics": [...]}.
        #[arg(long)]
        quadrics: String,
    },
    /// Check that pf(M) or det(M) is a nonzero multiple of f.
    Verify(VerifyArgs),
    /// Look for singular points of f over F_p.
    Smooth {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, value_delimiter = ',', default_value = "101,103")]
        primes: Vec<u64>,
    },
    /// Assemble [[B, A], [-A^T, 0]] and compare its pfaffian with det(A).
    BuildPhi8 {
        /// 4x4 skew matrix of quadrics.
        #[arg(long)]
        b: String,
        /// 4x4 matrix of linear forms.
        #[arg(long)]
        a: String,
    },
    /// Check that every point of a scheme lies on f.
    OnSurface {
        #[arg(long)]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    matrix: String,
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Pfaffian for {"n", "upper"} objects, determinant for arrays of rows.
    Auto,
    Pfaffian,
    Determinant,
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Hilbert function, h-vector and socle degree.
    Hilbert {
        #[arg(long)]
        points: String,
    },
    /// Arithmetically Gorenstein test: symmetry plus Cayley-Bacharach.
    Ag {
        #[arg(long)]
        points: String,
    },
    /// Sort a degree-8 scheme into plane-excluded, not-aG, n4-type or n6-type.
    Classify {
        #[arg(long)]
        points: String,
    },
    /// Cayley-Bacharach for forms of one degree (default: socle degree - 1).
    Cb {
        #[arg(long)]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<i64>,
    },
    /// Emit a point scheme as JSON.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Vertices of the unit cube (count ignored).
    Cube,
    /// (1, t, t^2, t^3) for t = 0, 1, ..., count - 1.
    TwistedCubic,
    /// Seeded points with integer coordinates.
    Random,
    /// Seeded points on the plane x3 = 0.
    Coplanar,
    /// (1, t, 0, 0) for t = 0, ..., count - 1.
    Collinear,
}

#[derive(Subcommand)]
enum PicardCmd {
    /// Initialized aCM line bundle case and split-bundle family of a class D.
    Classify {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, value_delimiter = ',')]
        flags: Vec<Flag>,
    },
    /// Stability of extensions of O(2h - D) by O(D) with c2 = 8.
    Stability {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Riemann-Roch: chi = 2r + c1^2/2 - c2.
    Rr {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
    },
    /// Arithmetic genus and h0 of an irreducible effective class.
    Genus {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, value_delimiter = ',')]
        flags: Vec<Flag>,
    },
    /// Dimension of the extension space Ext^1(O(2h - D), O(D)).
    Family {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, value_delimiter = ',')]
        flags: Vec<Flag>,
    },
    /// Whether two elliptic quartic classes give S-equivalent bundles.
    SEquiv {
        #[arg(long)]
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        d1: String,
        #[arg(long, allow_hyphen_values = true)]
        d2: String,
    },
}

#[derive(clap::Args)]
struct ClassArgs {
    #[arg(long)]
    lattice: String,
    /// Coordinates of D in the lattice basis, e.g. 0,1.
    #[arg(long, allow_hyphen_values = true)]
    d: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flag {
    Effective,
    Irreducible,
    /// h0(O(D - h)) = 0.
    DMinusHVanishes,
    /// h0(O(2h - D)) = 0.
    TwoHMinusDVanishes,
    GloballyGenerated,
    /// h0(O(2D - 2h)) = h0(O(2h - 2D)) = 0.
    TwiceDifferenceVanishes,
    All,
}

#[derive(Subcommand)]
enum PfaffianCmd {
    /// Pfaffian of a skew matrix.
    Compute {
        #[arg(long)]
        matrix: String,
    },
    /// Check that pf(M) or det(M) is a nonzero multiple of f.
    Verify(VerifyArgs),
    /// Check the degree pattern prescribed by the d-vector.
    Shape {
        #[arg(long)]
        matrix: String,
    },
}

struct Report {
    code: u8,
    verdict: String,
    text: String,
    details: Value,
}

impl Report {
    fn new(code: u8, verdict: impl Into<String>, text: String, details: Value) -> Self {
        Self { code, verdict: verdict.into(), text, details }
    }
}

type Run = Result<Report, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn usage(stderr: String) -> Outcome {
    Outcome { code: USAGE_ERROR, stdout: String::new(), stderr }
}

/// Parses `args` (including the program name) and runs the command.
pub fn dispatch(args: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                usage(text)
            } else {
                Outcome { code: VERIFIED, stdout: text, stderr: String::new() }
            };
        }
    };
    let (name, result) = match cli.command {
        Command::Replay { report } => return replay(&report, cli.json),
        Command::Corpus { out } => ("corpus".to_owned(), run_corpus(&out)),
        Command::Surface(cmd) => ("surface ".to_owned() + surface_verb(&cmd), run_surface(cmd)),
        Command::Scheme(cmd) => ("scheme ".to_owned() + scheme_verb(&cmd), run_scheme(cmd)),
        Command::Picard(cmd) => ("picard ".to_owned() + picard_verb(&cmd), run_picard(cmd)),
        Command::Pfaffian(cmd) => ("pfaffian ".to_owned() + pfaffian_verb(&cmd), run_pfaffian(cmd)),
    };
    let report = match result {
        Ok(r) => r,
        Err(msg) => return usage(format!("error: {msg}\n")),
    };
    if !cli.json {
        return Outcome { code: report.code, stdout: report.text, stderr: String::new() };
    }
    let argv = match input::self_contained_argv(args) {
        Ok(a) => a,
        Err(msg) => return usage(format!("error: {msg}\n")),
    };
    let mut obj = json!({
        "command": name,
        "verdict": report.verdict,
        "exit_code": report.code,
        "argv": argv,
    });
    if let (Value::Object(target), Value::Object(extra)) = (&mut obj, report.details) {
        target.extend(extra);
    }
    let stdout = serde_json::to_string_pretty(&obj).expect("report serializes") + "\n";
    Outcome { code: report.code, stdout, stderr: String::new() }
}

fn replay(path: &str, json: bool) -> Outcome {
    let report = match input::load_json(path) {
        Ok(v) => v,
        Err(msg) => return usage(format!("error: {msg}\n")),
    };
    let Some(argv) = report.get("argv").and_then(Value::as_array) else {
        return usage(format!("error: {path}: no \"argv\" array\n"));
    };
    let mut args = vec!["acmq".to_owned()];
    for a in argv {
        let Some(s) = a.as_str() else { return usage(format!("error: {path}: argv entries must be strings\n")) };
        args.push(s.to_owned());
    }
    if json && !args.iter().any(|a| a == "--json") {
        args.push("--json".into());
    }
    dispatch(&args)
}

fn surface_verb(c: &SurfaceCmd) -> &'static str {
    match c {
        SurfaceCmd::BuildPfaffian { .. } => "build-pfaffian",
        SurfaceCmd::Verify(_) => "verify",
        SurfaceCmd::Smooth { .. } => "smooth",
        SurfaceCmd::BuildPhi8 { .. } => "build-phi8",
        SurfaceCmd::OnSurface { .. } => "on-surface",
    }
}

fn scheme_verb(c: &SchemeCmd) -> &'static str {
    match c {
        SchemeCmd::Hilbert { .. } => "hilbert",
        SchemeCmd::Ag { .. } => "ag",
        SchemeCmd::Classify { .. } => "classify",
        SchemeCmd::Cb { .. } => "cb",
        SchemeCmd::Generate { .. } => "generate",
    }
}

fn picard_verb(c: &PicardCmd) -> &'static str {
    match c {
        PicardCmd::Classify { .. } => "classify",
        PicardCmd::Stability { .. } => "stability",
        PicardCmd::Rr { .. } => "rr",
        PicardCmd::Genus { .. } => "genus",
        PicardCmd::Family { .. } => "family",
        PicardCmd::SEquiv { .. } => "s-equiv",
    }
}

fn pfaffian_verb(c: &PfaffianCmd) -> &'static str {
    match c {
        PfaffianCmd::Compute { .. } => "compute",
        PfaffianCmd::Verify(_) => "verify",
        PfaffianCmd::Shape { .. } => "shape",
    }
}

fn run_corpus(out: &std::path::Path) -> Run {
    let files = corpus_generate(out).map_err(|e| format!("{}: {e}", out.display()))?;
    let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    let text = names.iter().map(|n| format!("wrote {n}\n")).collect();
    Ok(Report::new(VERIFIED, "written", text, json!({ "files": names })))
}

// ---- surface ----

fn load_surface(arg: &str) -> Result<QuarticSurface, String> {
    QuarticSurface::parse(&input::load_polynomial(arg)?).map_err(err)
}

fn run_surface(cmd: SurfaceCmd) -> Run {
    match cmd {
        SurfaceCmd::BuildPfaffian { quadrics } => build_pfaffian(&quadrics),
        SurfaceCmd::Verify(args) => verify(&args),
        SurfaceCmd::Smooth { f, primes } => smooth(&f, &primes),
        SurfaceCmd::BuildPhi8 { b, a } => build_phi8(&b, &a),
        SurfaceCmd::OnSurface { points, f } => on_surface(&points, &f),
    }
}

fn build_pfaffian(arg: &str) -> Run {
    let v = input::load_json(arg)?;
    let list = v.get("quadrics").unwrap_or(&v);
    let texts: Vec<String> =
        serde_json::from_value(list.clone()).map_err(|e| format!("quadrics: expected six strings: {e}"))?;
    let parsed = texts.iter().map(|t| poly_parse(t, Some(2))).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let q: [Polynomial; 6] = parsed.try_into().map_err(|v: Vec<_>| format!("expected 6 quadrics, got {}", v.len()))?;
    let m = pfaffian_rep_from_quadrics(&q).map_err(err)?;
    let f = quadric_product_sum(&q);
    let surface = QuarticSurface::new(f.clone()).map_err(err)?;
    let outcome = verify_representation(Representation::Pfaffian(&m), &surface).map_err(err)?;
    let ok = outcome.lambda().is_some_and(|l| *l == Rational::from_integer(1.into()));
    let matrix = m.to_json();
    let mut text = serde_json::to_string_pretty(&matrix).expect("matrix serializes");
    let _ = writeln!(text, "\nf = {f}\n{outcome}");
    let details = json!({ "matrix": matrix, "f": f.to_string(), "lambda": outcome.lambda().map(format_rational) });
    Ok(Report::new(if ok { VERIFIED } else { FALSIFIED }, if ok { "verified" } else { "mismatch" }, text, details))
}

fn verify(args: &VerifyArgs) -> Run {
    let value = input::load_json(&args.matrix)?;
    let surface = load_surface(&args.f)?;
    let mode = match args.mode {
        Mode::Auto if value.is_array() => Mode::Determinant,
        Mode::Auto => Mode::Pfaffian,
        m => m,
    };
    let skew;
    let square;
    let (rep, mode_name) = match mode {
        Mode::Determinant => {
            square = PolyMatrix::from_json(&value).map_err(err)?;
            (Representation::Determinant(&square), "determinant")
        }
        _ => {
            skew = SkewPolyMatrix::from_json(&value).map_err(err)?;
            (Representation::Pfaffian(&skew), "pfaffian")
        }
    };
    let outcome = match verify_representation(rep, &surface) {
        Ok(o) => o,
        Err(SurfaceError::Shape(violations)) => {
            let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
            let text = format!("mismatch: matrix violates its d-vector\n{}\n", list.join("\n"));
            return Ok(Report::new(FALSIFIED, "mismatch", text, json!({ "mode": mode_name, "violations": list })));
        }
        Err(e) => return Err(err(e)),
    };
    let text = format!("{mode_name}: {outcome}\n");
    Ok(match outcome {
        VerifyOutcome::Proportional { lambda } => {
            Report::new(VERIFIED, "verified", text, json!({ "mode": mode_name, "lambda": format_rational(&lambda) }))
        }
        VerifyOutcome::Mismatch { reason, computed } => Report::new(
            FALSIFIED,
            "mismatch",
            text,
            json!({ "mode": mode_name, "reason": reason, "computed": computed.map(|p| p.to_string()) }),
        ),
    })
}

fn smooth(f: &str, primes: &[u64]) -> Run {
    let surface = load_surface(f)?;
    let cert = smoothness_probe(&surface, primes).map_err(err)?;
    let mut text = String::new();
    for (p, v) in &cert.verdicts {
        let _ = match v {
            PrimeVerdict::SmoothModP { points_on_surface } => {
                writeln!(text, "p = {p}: no singular point ({points_on_surface} points on F)")
            }
            PrimeVerdict::Singular { witness } => writeln!(text, "p = {p}: singular at ({})", join(witness)),
        };
    }
    let smooth = cert.certified_smooth();
    let primes = join(&cert.primes_checked());
    text.push_str(&if smooth {
        format!("certified mod p for p in {{{primes}}}\n")
    } else {
        "singular point found\n".to_owned()
    });
    let details = json!({ "certificate": cert });
    let verdict = if smooth { "certified mod p" } else { "singular mod p" };
    Ok(Report::new(if smooth { VERIFIED } else { FALSIFIED }, verdict, text, details))
}

fn build_phi8(b: &str, a: &str) -> Run {
    let b = SkewPolyMatrix::from_json(&input::load_json(b)?).map_err(err)?;
    let a = PolyMatrix::from_json(&input::load_json(a)?).map_err(err)?;
    let blk = build_phi_n8(&b, &a).map_err(err)?;
    let details = json!({
        "phi": blk.phi.to_json(),
        "pfaffian": blk.pfaffian.to_string(),
        "det_a": blk.det_a.to_string(),
        "sign": blk.sign,
    });
    Ok(match blk.sign {
        Some(s) => {
            Report::new(VERIFIED, "verified", format!("pf(Phi) = {s:+} det(A)\ndet(A) = {}\n", blk.det_a), details)
        }
        None => Report::new(FALSIFIED, "degenerate", "det(A) vanishes identically\n".into(), details),
    })
}

fn on_surface(points: &str, f: &str) -> Run {
    let scheme = load_points(points)?;
    let surface = load_surface(f)?;
    let r = surface::points_on_surface(&scheme, &surface);
    let offenders: Vec<Value> =
        r.offenders.iter().map(|(i, v)| json!({ "point": i + 1, "value": format_rational(v) })).collect();
    let ok = r.all_on_surface();
    let text = if ok {
        format!("all {} points lie on F\n", scheme.degree())
    } else {
        r.offenders.iter().map(|(i, v)| format!("point {}: f = {}\n", i + 1, format_rational(v))).collect()
    };
    Ok(Report::new(
        if ok { VERIFIED } else { FALSIFIED },
        if ok { "on-surface" } else { "off-surface" },
        text,
        json!({ "offenders": offenders }),
    ))
}

// ---- schemes ----

fn load_points(arg: &str) -> Result<PointScheme, String> {
    PointScheme::from_json(&input::load_json(arg)?).map_err(err)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn describe_profile(p: &HilbertProfile) -> String {
    let socle = p.socle_degree.map_or("none".into(), |s| s.to_string());
    format!("hf = ({})\nhvec = ({})\nsocle degree {socle}\n", join(&p.hf), join(&p.hvec))
}

fn run_scheme(cmd: SchemeCmd) -> Run {
    match cmd {
        SchemeCmd::Hilbert { points } => {
            let e = load_points(&points)?;
            let p = e.hilbert_profile();
            let text = format!("degree {}\n{}", e.degree(), describe_profile(&p));
            Ok(Report::new(VERIFIED, "computed", text, json!({ "points": e.to_json()["points"], "profile": p })))
        }
        SchemeCmd::Ag { points } => {
            let e = load_points(&points)?;
            let r = e.ag_check();
            let mut text = describe_profile(&r.profile);
            if let Some(f) = &r.failure {
                let _ = writeln!(text, "{f}");
            }
            let _ = writeln!(text, "{}", r.verdict.as_str());
            let code = if r.verdict == AgVerdict::Ag { VERIFIED } else { FALSIFIED };
            Ok(Report::new(code, r.verdict.as_str(), text, json!({ "points": e.to_json()["points"], "ag": r })))
        }
        SchemeCmd::Classify { points } => {
            let e = load_points(&points)?;
            let c = e.classify_degree8().map_err(err)?;
            let mut text = String::new();
            if let Some(ag) = &c.ag {
                text.push_str(&describe_profile(&ag.profile));
            }
            for (t, v) in &c.quotient_values {
                let _ = writeln!(text, "dim (S/(quadrics))_{t} = {v}");
            }
            let _ = writeln!(text, "{}", c.class.as_str());
            let code = match c.class {
                Degree8Class::N4Type | Degree8Class::N6Type => VERIFIED,
                Degree8Class::NotAg | Degree8Class::PlaneExcluded => FALSIFIED,
            };
            Ok(Report::new(
                code,
                c.class.as_str(),
                text,
                json!({ "points": e.to_json()["points"], "classification": c }),
            ))
        }
        SchemeCmd::Cb { points, twist } => {
            let e = load_points(&points)?;
            let m = match twist {
                Some(m) => m,
                None => e.hilbert_profile().socle_degree.map_or(-1, |s| s as i64 - 1),
            };
            let r = e.cayley_bacharach(m);
            let mut text = format!(
                "forms of degree {m}: {} through the scheme, after each removal ({})\n",
                r.base_dimension,
                join(&r.removal_dimensions)
            );
            text.push_str(&match r.witness {
                None => "Cayley-Bacharach holds\n".to_owned(),
                Some(i) => format!("Cayley-Bacharach fails at point {}\n", i + 1),
            });
            let (code, verdict) = if r.holds() { (VERIFIED, "holds") } else { (FALSIFIED, "fails") };
            Ok(Report::new(code, verdict, text, json!({ "points": e.to_json()["points"], "cayley_bacharach": r })))
        }
        SchemeCmd::Generate { kind, count, seed } => {
            let e = match kind {
                Kind::Cube => schemes::cube_points(),
                Kind::TwistedCubic => {
                    let params: Vec<i64> = (0..count as i64).collect();
                    schemes::twisted_cubic_points_int(&params).map_err(err)?
                }
                Kind::Random => schemes::random_points(seed, count),
                Kind::Coplanar => schemes::random_coplanar_points(seed, count),
                Kind::Collinear => schemes::collinear_points(count),
            };
            let v = e.to_json();
            let text = serde_json::to_string_pretty(&v).expect("points serialize") + "\n";
            Ok(Report::new(VERIFIED, "generated", text, v))
        }
    }
}

// ---- picard ----

fn load_lattice(arg: &str) -> Result<PicardLattice, String> {
    PicardLattice::from_json(&input::load_json(arg)?).map_err(err)
}

fn parse_class(text: &str) -> Result<DivisorClass, String> {
    DivisorClass::parse(text).ok_or_else(|| format!("bad class {text:?}: expected comma-separated integers"))
}

fn load_class(args: &ClassArgs) -> Result<(PicardLattice, DivisorClass), String> {
    Ok((load_lattice(&args.lattice)?, parse_class(&args.d)?))
}

fn cohomology_flags(flags: &[Flag]) -> CohomologyFlags {
    let mut c = CohomologyFlags::default();
    for f in flags {
        match f {
            Flag::Effective => c.d_effective = true,
            Flag::Irreducible => c.d_irreducible = true,
            Flag::DMinusHVanishes => c.h0_d_minus_h_vanishes = true,
            Flag::TwoHMinusDVanishes => c.h0_2h_minus_d_vanishes = true,
            Flag::GloballyGenerated => c.d_globally_generated = true,
            Flag::TwiceDifferenceVanishes => c.h0_twice_difference_vanishes = true,
            Flag::All => {
                c = CohomologyFlags {
                    h0_d_minus_h_vanishes: true,
                    h0_2h_minus_d_vanishes: true,
                    d_irreducible: true,
                    d_effective: true,
                    d_globally_generated: true,
                    h0_twice_difference_vanishes: true,
                }
            }
        }
    }
    c
}

fn lattice_details(l: &PicardLattice, d: &DivisorClass) -> Value {
    json!({ "lattice": l.to_json(), "d": d.0 })
}

fn run_picard(cmd: PicardCmd) -> Run {
    match cmd {
        PicardCmd::Classify { class, flags } => {
            let (l, d) = load_class(&class)?;
            let flags = cohomology_flags(&flags);
            let (d2, dh) = l.numerics(&d).map_err(err)?;
            let case = l.watanabe_classify(&d, &flags).map_err(err)?;
            let split = l.decomposable_case(&d, &flags).map_err(err)?;
            let text = format!("D^2 = {d2}, Dh = {dh}\ncase {}\nsplit family {}\n", case.as_str(), split.as_str());
            let mut details = lattice_details(&l, &d);
            details["d2"] = d2.into();
            details["dh"] = dh.into();
            details["case"] = case.as_str().into();
            details["split_family"] = split.as_str().into();
            let code = if case == WatanabeCase::None { FALSIFIED } else { VERIFIED };
            Ok(Report::new(code, case.as_str(), text, details))
        }
        PicardCmd::Stability { class } => {
            let (l, d) = load_class(&class)?;
            let v = l.stability_classify(&d).map_err(err)?;
            let (sub, total) = &v.reduced_polys;
            let text = format!(
                "mu(O(D)) = {}, mu(E) = {}\np(O(D)) = {}\np(E) = {}\n{}\n",
                format_rational(&v.mu_sub),
                format_rational(&v.mu_total),
                format_reduced_poly(sub),
                format_reduced_poly(total),
                v.kind.as_str()
            );
            let mut details = lattice_details(&l, &d);
            details["mu_sub"] = format_rational(&v.mu_sub).into();
            details["mu_total"] = format_rational(&v.mu_total).into();
            details["reduced_poly_sub"] = format_reduced_poly(sub).into();
            details["reduced_poly_total"] = format_reduced_poly(total).into();
            Ok(Report::new(VERIFIED, v.kind.as_str(), text, details))
        }
        PicardCmd::Rr { lattice, r, c1, c2 } => {
            let l = load_lattice(&lattice)?;
            let c1 = parse_class(&c1)?;
            let chi = l.euler_characteristic(r, &c1, c2).map_err(err)?;
            let details = json!({ "lattice": l.to_json(), "r": r, "c1": c1.0, "c2": c2, "chi": chi });
            Ok(Report::new(VERIFIED, chi.to_string(), format!("chi = {chi}\n"), details))
        }
        PicardCmd::Genus { class, flags } => {
            let (l, d) = load_class(&class)?;
            let (genus, h0) = l.genus_and_h0(&d, &cohomology_flags(&flags)).map_err(err)?;
            let mut details = lattice_details(&l, &d);
            details["genus"] = genus.into();
            details["h0"] = h0.into();
            Ok(Report::new(VERIFIED, "computed", format!("genus {genus}, h0 = {h0}\n"), details))
        }
        PicardCmd::Family { class, flags } => {
            let (l, d) = load_class(&class)?;
            let dim = l.extension_family_dim(&d, &cohomology_flags(&flags)).map_err(err)?;
            let text = format!("Ext^1 has dimension {dim}; non-split extensions form P^{}\n", dim - 1);
            let mut details = lattice_details(&l, &d);
            details["ext_dimension"] = dim.into();
            details["projective_dimension"] = (dim - 1).into();
            Ok(Report::new(VERIFIED, dim.to_string(), text, details))
        }
        PicardCmd::SEquiv { lattice, d1, d2 } => {
            let l = load_lattice(&lattice)?;
            let (a, b) = (parse_class(&d1)?, parse_class(&d2)?);
            let same = l.s_equivalence_pair(&a, &b).map_err(err)?;
            let details = json!({ "lattice": l.to_json(), "d1": a.0, "d2": b.0, "s_equivalent": same });
            let (code, verdict) = if same { (VERIFIED, "S-equivalent") } else { (FALSIFIED, "not S-equivalent") };
            Ok(Report::new(code, verdict, format!("{verdict}\n"), details))
        }
    }
}

// ---- pfaffian ----

fn run_pfaffian(cmd: PfaffianCmd) -> Run {
    match cmd {
        PfaffianCmd::Compute { matrix } => {
            let m = SkewPolyMatrix::from_json(&input::load_json(&matrix)?).map_err(err)?;
            let pf = m.pfaffian().map_err(err)?;
            Ok(Report::new(VERIFIED, "computed", format!("pf = {pf}\n"), json!({ "pfaffian": pf.to_string() })))
        }
        PfaffianCmd::Verify(args) => verify(&args),
        PfaffianCmd::Shape { matrix } => {
            let m = SkewPolyMatrix::from_json(&input::load_json(&matrix)?).map_err(err)?;
            let r = m.validate_shape();
            let list: Vec<String> = r.violations.iter().map(ToString::to_string).collect();
            let text = if r.is_valid() { "shape ok\n".to_owned() } else { list.join("\n") + "\n" };
            let (code, verdict) = if r.is_valid() { (VERIFIED, "valid") } else { (FALSIFIED, "invalid") };
            Ok(Report::new(code, verdict, text, json!({ "d": r.d, "violations": list })))
        }
    }
}
