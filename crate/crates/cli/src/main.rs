mod output;

use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use tqf_core::clifford::{self, QuaternionOrder};
use tqf_core::forms::{self, Mat3};
use tqf_core::genera::{InventoryStore, DEFAULT_CANDIDATE_BOUND};
use tqf_core::local::{self, GenusLabel};
use tqf_core::verify::golden::IdentityTable;
use tqf_core::verify::{self, QSeries, Suite, VerificationReport};
use tqf_core::{hurwitz, transforms, Error, Rational, TernaryForm};

use output::{csv_rows, json_line, json_pretty, matrix_cell, Format};

#[derive(Debug, Parser)]
#[command(name = "tqf", version, about = "Positive definite ternary quadratic forms of level 4N")]
struct Cli {
    /// Output format. Record-shaped results default to json, single values to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Directory for the per-level class inventories (created on demand).
    #[arg(long, global = true, env = "TQF_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Neither read nor write the inventory cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Operations on a single form `a,b,c,r,s,t`.
    Form {
        #[command(subcommand)]
        op: FormOp,
    },
    /// Every class of primitive positive definite forms of level 4N.
    Classify {
        /// The level 4N, N odd squarefree.
        level: i64,
        /// Largest number of reduced candidates to scan.
        #[arg(long)]
        max: Option<u64>,
    },
    /// Modified Hurwitz class number H^(N1,N2)(D).
    Hurwitz { n1: i64, n2: i64, d: u64 },
    /// Type number T_{N,F}.
    Typenum { n: i64, f: i64 },
    /// Number of classes of level 4N, from the class number formula.
    Classnum {
        /// N, odd squarefree.
        n: i64,
    },
    /// Coefficients of a genus theta series `G_{4N,d,t}` or of `θ_{d,2N/d}` given as `d,2N/d`.
    Theta {
        series: String,
        #[arg(long)]
        upto: usize,
        /// Replace q by q^l.
        #[arg(long, default_value_t = 1)]
        dilate: i64,
    },
    /// Lehman's maps and Watson's transformation.
    Transform {
        #[command(subcommand)]
        op: TransformOp,
    },
    /// Even Clifford algebras and their orders.
    Clifford {
        #[command(subcommand)]
        op: CliffordOp,
    },
    /// Run a verification suite, or `all`.
    Verify {
        /// appendixA, appendixB, table2, table3, genera, shapes, typenumbers,
        /// berkovich-jagy, du, eisenstein, clifford, enumeration,
        /// hurwitz-relations or all.
        suite: String,
        /// Suite bound: largest level (appendixB), product NF (typenumbers),
        /// discriminant (clifford samples) or N (enumeration).
        #[arg(long)]
        max: Option<i64>,
        /// Largest n, m or D compared in identities.
        #[arg(long)]
        upto: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum FormOp {
    /// Discriminant, divisor, level, primitivity, |Aut| and genus.
    Info { form: TernaryForm },
    /// R_f(n), or R_f(0..=upto).
    Count {
        form: TernaryForm,
        n: Option<u64>,
        #[arg(long, conflicts_with = "n")]
        upto: Option<usize>,
    },
    /// Canonical representative and the matrix taking the form to it.
    Reduce { form: TernaryForm },
    /// Decide equivalence; prints a witness U with Uᵀ M_g U = M_f.
    Equiv { f: TernaryForm, g: TernaryForm },
    /// The full automorphism group.
    Aut { form: TernaryForm },
}

#[derive(Debug, Subcommand)]
enum TransformOp {
    /// φ_p for an odd prime p dividing the level, φ₂ for p = 2; prints the reduced image.
    Phi {
        form: TernaryForm,
        #[arg(long)]
        prime: i64,
    },
    /// λ_m.
    Watson {
        form: TernaryForm,
        #[arg(long)]
        modulus: i64,
    },
}

#[derive(Debug, Subcommand)]
enum CliffordOp {
    /// Multiplication table of C₀(f).
    Build { form: TernaryForm },
    /// f ↦ C₀(f) ↦ f_O, with discrd and the equivalence check.
    Roundtrip { form: TernaryForm },
    /// ρ_O(n, r): elements of norm n and trace r.
    #[command(allow_negative_numbers = true)]
    Rho {
        #[arg(long, required_unless_present = "order", conflicts_with = "order")]
        form: Option<TernaryForm>,
        /// Order JSON file, `-` for stdin.
        #[arg(long)]
        order: Option<PathBuf>,
        n: i64,
        r: i64,
    },
}

enum Failure {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

struct Context {
    format: Option<Format>,
    store: InventoryStore,
}

impl Context {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let cache_dir = if cli.no_cache { None } else { cli.cache_dir.clone() };
    let ctx = Context { format: cli.format, store: InventoryStore::new(cache_dir, DEFAULT_CANDIDATE_BOUND) };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli.command, &ctx, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command, ctx: &Context, out: &mut impl Write) -> Outcome {
    match command {
        Command::Form { op } => form(op, ctx, out),
        Command::Classify { level, max } => classify(*level, *max, ctx, out),
        Command::Hurwitz { n1, n2, d } => scalar(ctx, out, &hurwitz::modified_h(*n1, *n2, *d)?),
        Command::Typenum { n, f } => scalar(ctx, out, &hurwitz::type_number(*n, *f)?),
        Command::Classnum { n } => scalar(ctx, out, &hurwitz::class_number_4n(*n)?),
        Command::Theta { series, upto, dilate } => theta(series, *upto, *dilate, ctx, out),
        Command::Transform { op } => transform(op, ctx, out),
        Command::Clifford { op } => clifford_cmd(op, ctx, out),
        Command::Verify { suite, max, upto } => verify_cmd(suite, *max, *upto, ctx, out),
    }
}

/// One value; json prints it as a JSON string.
fn scalar(ctx: &Context, out: &mut impl Write, value: &impl ToString) -> Outcome {
    let s = value.to_string();
    match ctx.format(Format::Text) {
        Format::Json => json_line(out, &s)?,
        Format::Csv => csv_rows(out, &[ValueRow { value: s }])?,
        Format::Text => writeln!(out, "{s}")?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ValueRow {
    value: String,
}

#[derive(Serialize)]
struct FormInfo {
    d: i64,
    m: i64,
    level: i64,
    primitive: bool,
    aut: usize,
    genus: String,
}

#[derive(Serialize)]
struct CountRow {
    n: u64,
    count: u64,
}

#[derive(Serialize)]
struct Reduced {
    form: TernaryForm,
    transform: Mat3,
}

#[derive(Serialize)]
struct ReducedRow {
    form: TernaryForm,
    transform: String,
}

#[derive(Serialize)]
struct EquivalenceRow {
    equivalent: bool,
    witness: String,
}

#[derive(Serialize)]
struct Equivalence {
    equivalent: bool,
    witness: Option<Mat3>,
}

#[derive(Serialize)]
struct MatrixRow {
    index: usize,
    matrix: String,
}

fn form(op: &FormOp, ctx: &Context, out: &mut impl Write) -> Outcome {
    match op {
        FormOp::Info { form } => {
            let inv = form.invariants()?;
            let info = FormInfo {
                d: inv.discriminant,
                m: inv.divisor,
                level: inv.level,
                primitive: inv.primitive,
                aut: inv.aut_count,
                genus: local::label_any_level(form)?.to_string(),
            };
            match ctx.format(Format::Json) {
                Format::Json => json_line(out, &info)?,
                Format::Csv => csv_rows(out, &[info])?,
                Format::Text => writeln!(
                    out,
                    "d={} m={} level={} primitive={} aut={} genus={}",
                    info.d, info.m, info.level, info.primitive, info.aut, info.genus
                )?,
            }
        }
        FormOp::Count { form, n, upto } => {
            let rows: Vec<CountRow> = match (n, upto) {
                (Some(n), _) => {
                    let count = forms::represent_count(form, i64::try_from(*n).map_err(|_| overflow())?)?;
                    vec![CountRow { n: *n, count }]
                }
                (None, Some(upto)) => forms::theta_counts(form, *upto)?
                    .into_iter()
                    .enumerate()
                    .map(|(n, count)| CountRow { n: n as u64, count })
                    .collect(),
                (None, None) => {
                    return Err(Error::InvalidParameter("give n or --upto".into()).into());
                }
            };
            let single = n.is_some();
            match ctx.format(if single { Format::Text } else { Format::Json }) {
                Format::Json if single => json_line(out, &rows[0])?,
                Format::Json => json_line(out, &rows)?,
                Format::Csv => csv_rows(out, &rows)?,
                Format::Text if single => writeln!(out, "{}", rows[0].count)?,
                Format::Text => {
                    for r in &rows {
                        writeln!(out, "{} {}", r.n, r.count)?;
                    }
                }
            }
        }
        FormOp::Reduce { form } => {
            form.check_positive_definite()?;
            let (g, u) = forms::canonical(form)?;
            match ctx.format(Format::Text) {
                Format::Json => json_line(out, &Reduced { form: g, transform: u })?,
                Format::Csv => csv_rows(out, &[ReducedRow { form: g, transform: matrix_cell(&u) }])?,
                Format::Text => writeln!(out, "{g}")?,
            }
        }
        FormOp::Equiv { f, g } => {
            let witness = forms::is_equivalent(f, g)?.map(|w| w.matrix);
            let e = Equivalence { equivalent: witness.is_some(), witness };
            match ctx.format(Format::Json) {
                Format::Json => json_line(out, &e)?,
                Format::Csv => {
                    let witness = e.witness.as_ref().map(matrix_cell).unwrap_or_default();
                    csv_rows(out, &[EquivalenceRow { equivalent: e.equivalent, witness }])?
                }
                Format::Text => match &e.witness {
                    Some(u) => writeln!(out, "equivalent {}", matrix_cell(u))?,
                    None => writeln!(out, "not equivalent")?,
                },
            }
        }
        FormOp::Aut { form } => {
            let auts = forms::automorphisms(form)?;
            let rows: Vec<MatrixRow> =
                auts.iter().enumerate().map(|(index, w)| MatrixRow { index, matrix: matrix_cell(&w.matrix) }).collect();
            match ctx.format(Format::Json) {
                Format::Json => {
                    let matrices: Vec<Mat3> = auts.iter().map(|w| w.matrix).collect();
                    json_line(out, &AutGroup { form: *form, order: matrices.len(), automorphisms: matrices })?
                }
                Format::Csv => csv_rows(out, &rows)?,
                Format::Text => {
                    writeln!(out, "order {}", rows.len())?;
                    for r in &rows {
                        writeln!(out, "{}", r.matrix)?;
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct AutGroup {
    form: TernaryForm,
    order: usize,
    automorphisms: Vec<Mat3>,
}

fn overflow() -> Error {
    Error::Overflow("argument")
}

fn classify(level: i64, max: Option<u64>, ctx: &Context, out: &mut impl Write) -> Outcome {
    let n = local::odd_squarefree_quarter(level)?;
    let inv = match max {
        Some(bound) => {
            let store = InventoryStore::new(ctx.store_dir(), bound);
            store.get(n)?
        }
        None => ctx.store.get(n)?,
    };
    match ctx.format(Format::Json) {
        Format::Json => inv.write_jsonl(&mut *out)?,
        Format::Csv => csv_rows(out, &inv.classes)?,
        Format::Text => {
            for c in &inv.classes {
                writeln!(out, "{:<24} {:>8} {:>4}  {}", c.form.to_string(), c.d, c.aut, c.genus)?;
            }
            writeln!(out, "{} classes", inv.classes.len())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

impl Context {
    fn store_dir(&self) -> Option<PathBuf> {
        self.store.cache_dir().map(PathBuf::from)
    }
}

#[derive(Serialize)]
struct Series<'a> {
    series: &'a str,
    dilate: i64,
    coefficients: Vec<Rational>,
}

#[derive(Serialize)]
struct CoefficientRow {
    n: usize,
    coefficient: Rational,
}

fn theta(series: &str, upto: usize, dilate: i64, ctx: &Context, out: &mut impl Write) -> Outcome {
    if dilate < 1 {
        return Err(Error::InvalidParameter(format!("dilation {dilate} must be positive")).into());
    }
    let q: QSeries = if series.starts_with("G_") {
        let g: GenusLabel = series.parse()?;
        let n = local::odd_squarefree_quarter(g.level)?;
        let inv = ctx.store.get(n)?;
        if !inv.partition.contains_key(&g) {
            return Err(Error::UnknownGenus(g.to_string()).into());
        }
        verify::theta_genus(&inv, &g, upto)?.dilated(dilate as usize)
    } else {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("invalid series {series:?}")));
        let (d, e) = series.split_once(',').ok_or_else(|| Error::Parse(format!("invalid series {series:?}")))?;
        let (d, e) = (parse(d)?, parse(e)?);
        let two_n = d.checked_mul(e).ok_or_else(overflow)?;
        if two_n <= 0 || two_n % 2 != 0 {
            return Err(Error::InvalidParameter(format!("{d}·{e} is not 2N")).into());
        }
        verify::theta_modified(d, two_n / 2, dilate, upto)?
    };
    let coefficients: Vec<Rational> = (0..=upto).map(|n| q.coefficient(n).clone()).collect();
    match ctx.format(Format::Json) {
        Format::Json => json_line(out, &Series { series, dilate, coefficients })?,
        Format::Csv => {
            let rows: Vec<CoefficientRow> =
                coefficients.into_iter().enumerate().map(|(n, coefficient)| CoefficientRow { n, coefficient }).collect();
            csv_rows(out, &rows)?
        }
        Format::Text => writeln!(out, "{q}")?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Image {
    form: TernaryForm,
    image: TernaryForm,
}

fn transform(op: &TransformOp, ctx: &Context, out: &mut impl Write) -> Outcome {
    let (source, image, extra) = match op {
        TransformOp::Phi { form, prime } => {
            let image = if *prime == 2 { transforms::phi_2(form)? } else { transforms::phi_p(form, *prime)? };
            (*form, forms::reduce(&image)?, None)
        }
        TransformOp::Watson { form, modulus } => {
            let w = transforms::watson(form, *modulus)?;
            if w.experimental {
                eprintln!("warning: λ_{modulus} is only established for m = 4");
            }
            (*form, w.form, Some(w))
        }
    };
    match (ctx.format(Format::Text), extra) {
        (Format::Json, Some(w)) => json_line(out, &WatsonOutput { source, image: &w })?,
        (Format::Json, None) => json_line(out, &Image { form: source, image })?,
        (Format::Csv, _) => csv_rows(out, &[Image { form: source, image }])?,
        (Format::Text, _) => writeln!(out, "{image}")?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct WatsonOutput<'a> {
    source: TernaryForm,
    #[serde(flatten)]
    image: &'a transforms::WatsonImage,
}

#[derive(Serialize)]
struct Roundtrip {
    form: TernaryForm,
    d: i64,
    discrd: i64,
    dual: TernaryForm,
    equivalent: bool,
}

#[derive(Serialize)]
struct ProductRow {
    p: usize,
    q: usize,
    c0: i64,
    c1: i64,
    c2: i64,
    c3: i64,
}

fn clifford_cmd(op: &CliffordOp, ctx: &Context, out: &mut impl Write) -> Outcome {
    match op {
        CliffordOp::Build { form } => {
            let o = clifford::even_clifford(form)?;
            match ctx.format(Format::Json) {
                Format::Json => writeln!(out, "{}", o.to_json())?,
                Format::Csv => csv_rows(out, &product_rows(&o))?,
                Format::Text => {
                    writeln!(out, "traces {:?}", o.trace)?;
                    writeln!(out, "discrd {}", o.discrd()?)?;
                    for r in product_rows(&o) {
                        writeln!(
                            out,
                            "{}*{} = [{}, {}, {}, {}]",
                            o.basis[r.p], o.basis[r.q], r.c0, r.c1, r.c2, r.c3
                        )?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        CliffordOp::Roundtrip { form } => {
            let o = clifford::even_clifford(form)?;
            let dual = clifford::dual_form(&o)?;
            let r = Roundtrip {
                form: *form,
                d: form.discriminant()?,
                discrd: o.discrd()?,
                dual,
                equivalent: forms::is_equivalent(form, &dual)?.is_some(),
            };
            let ok = r.equivalent && r.d == r.discrd;
            match ctx.format(Format::Json) {
                Format::Json => json_line(out, &r)?,
                Format::Csv => csv_rows(out, &[&r])?,
                Format::Text => writeln!(
                    out,
                    "{} -> {} d={} discrd={} {}",
                    r.form,
                    r.dual,
                    r.d,
                    r.discrd,
                    if r.equivalent { "equivalent" } else { "NOT equivalent" }
                )?,
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        CliffordOp::Rho { form, order, n, r } => {
            let o = match (form, order) {
                (Some(f), _) => clifford::even_clifford(f)?,
                (None, Some(path)) => QuaternionOrder::from_json(&read_input(path)?)?,
                (None, None) => unreachable!("clap requires --form or --order"),
            };
            scalar(ctx, out, &clifford::rho_count(&o, *n, *r)?)
        }
    }
}

fn product_rows(o: &QuaternionOrder) -> Vec<ProductRow> {
    let mut rows = Vec::with_capacity(16);
    for p in 0..4 {
        for q in 0..4 {
            let [c0, c1, c2, c3] = o.mult[p][q];
            rows.push(ProductRow { p, q, c0, c1, c2, c3 });
        }
    }
    rows
}

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: &'a str,
    name: &'a str,
    status: &'static str,
    lhs: String,
    rhs: String,
    detail: String,
}

fn verify_cmd(name: &str, max: Option<i64>, upto: Option<usize>, ctx: &Context, out: &mut impl Write) -> Outcome {
    let suites: Vec<Suite> =
        if name.eq_ignore_ascii_case("all") { Suite::ALL.to_vec() } else { vec![name.parse()?] };
    let reports: Vec<VerificationReport> = suites.iter().map(|s| run_suite(*s, max, upto, &ctx.store)).collect();
    let passed = reports.iter().all(|r| r.passed());
    match ctx.format(Format::Text) {
        Format::Json if reports.len() == 1 => json_pretty(out, &reports[0])?,
        Format::Json => json_pretty(out, &reports)?,
        Format::Csv => {
            let rows: Vec<CheckRow> = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(|c| {
                        let (status, detail) = match &c.outcome {
                            verify::Outcome::Pass => ("pass", c.detail.clone()),
                            verify::Outcome::Corrected { certificate } => ("corrected", certificate.clone()),
                            verify::Outcome::Fail { kind } => (
                                "fail",
                                format!("{}{}{}", kind_name(*kind), if c.detail.is_empty() { "" } else { ": " }, c.detail),
                            ),
                        };
                        CheckRow {
                            suite: &r.suite,
                            name: &c.name,
                            status,
                            lhs: c.lhs.to_string(),
                            rhs: c.rhs.to_string(),
                            detail,
                        }
                    })
                })
                .collect();
            csv_rows(out, &rows)?
        }
        Format::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
        }
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn kind_name(kind: verify::FailureKind) -> &'static str {
    match kind {
        verify::FailureKind::CodeVsTable => "code-vs-table",
        verify::FailureKind::TableInternal => "table-internal",
        verify::FailureKind::Mismatch => "mismatch",
        verify::FailureKind::Error => "error",
    }
}

const GENUS_LEVELS: [i64; 9] = [1, 3, 5, 7, 13, 15, 21, 35, 39];
const ENUMERATION_NS: [i64; 10] = [1, 3, 5, 7, 11, 13, 15, 21, 33, 35];

fn run_suite(suite: Suite, max: Option<i64>, upto: Option<usize>, store: &InventoryStore) -> VerificationReport {
    let name = suite.name();
    match suite {
        Suite::AppendixA => verify::check_appendix_a(),
        Suite::AppendixB => verify::check_appendix_b(max.unwrap_or(996)),
        Suite::Table2 => verify::check_identity_table(IdentityTable::Table2, upto.unwrap_or(200), store),
        Suite::Table3 => verify::check_identity_table(IdentityTable::Table3, upto.unwrap_or(100), store),
        Suite::Genera => VerificationReport::merge(
            name,
            GENUS_LEVELS.iter().map(|&n| verify::check_genus_identities(n, upto.unwrap_or(100), store)).collect(),
        ),
        Suite::Shapes => {
            VerificationReport::merge(name, GENUS_LEVELS.iter().map(|&n| verify::check_genus_shapes(n, store)).collect())
        }
        Suite::TypeNumbers => verify::check_type_numbers(max.unwrap_or(200)),
        Suite::BerkovichJagy => VerificationReport::merge(
            name,
            [3, 5, 7, 13].iter().map(|&p| verify::check_berkovich_jagy(p, upto.unwrap_or(100), store)).collect(),
        ),
        Suite::Du => VerificationReport::merge(
            name,
            [(1, 3, 5, 1), (1, 3, 5, 2), (10, 3, 7, 1)]
                .iter()
                .map(|&(d, p, q, n)| verify::check_du(d, p, q, n, upto.unwrap_or(50) as u64))
                .collect(),
        ),
        Suite::Eisenstein => VerificationReport::merge(
            name,
            [1i64, 3, 5, 15, 105]
                .iter()
                .flat_map(|&n| {
                    let p = tqf_core::arith::prime_factors(n).first().copied().unwrap_or(1);
                    let ls = if p == 1 { vec![1] } else { vec![1, p] };
                    ls.into_iter().map(move |l| verify::check_eisenstein(n, l, upto.unwrap_or(50)))
                })
                .collect(),
        ),
        Suite::Clifford => verify::check_clifford(50, max.unwrap_or(500), 60, upto.unwrap_or(60) as i64),
        Suite::Enumeration => {
            let ns: Vec<i64> = ENUMERATION_NS.iter().copied().filter(|&n| max.is_none_or(|m| n <= m)).collect();
            verify::check_enumeration(&ns, store)
        }
        Suite::HurwitzRelations => VerificationReport::merge(
            name,
            [3, 5, 7].iter().map(|&p| verify::check_hurwitz_relations(p, upto.unwrap_or(100) as u64)).collect(),
        ),
    }
}
