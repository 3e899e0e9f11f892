//! `umrow`: command-line driver for the monoid, row-reduction and corpus
//! tooling in `umrow-core`.
//!
//! Exit codes: 0 ok, 1 failed verification, 2 parse or config error,
//! 3 desk-scale limit, 4 violated precondition.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use umrow_core::coeff_rings::{IdealDescriptor, RingDescriptor};
use umrow_core::corpus;
use umrow_core::geometry::{
    self, default_section, extremal_generators, hilbert_basis, is_normal, is_phi_simplicial, is_seminormal,
    pyramidal_decomposition, section_polytope, GeometryError, SeminormalStatus,
};
use umrow_core::groups::{self, FormKind, FormType};
use umrow_core::io::json::{self as uj, Carrier, JsonCarrier};
use umrow_core::io::config::SEED_ENV;
use umrow_core::io::{ExperimentConfig, IoError};
use umrow_core::matrix;
use umrow_core::reduction::{
    bounded_orbit_search, check_unimodular, monomial_pool, pivot_reduce, poly_cost, reduce_mod_radical,
    reduce_over_field, reduce_relative, reduce_semilocal, scalar_cost, stabilization_descent, Procedure,
    ReductionError, ReductionTranscript, SearchBudget, SearchOutcome,
};
use umrow_core::ring::Ring;

#[derive(Parser)]
#[command(name = "umrow", version, about = "Affine monoids and unimodular rows over monoid rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Affine monoid geometry.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Unimodular rows.
    #[command(subcommand)]
    Row(RowCmd),
    /// Independent transcript verification.
    #[command(subcommand)]
    Transcript(TranscriptCmd),
    /// Symplectic and orthogonal group matrices.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Seeded corpus generation.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// Rank, positivity, normality, seminormality, complexity and phi(M).
    Analyze {
        path: PathBuf,
        /// Enumeration bound for the seminormality check.
        #[arg(long)]
        seminormal_bound: Option<i64>,
    },
    /// Hilbert basis of the normalization.
    Hilbert {
        path: PathBuf,
        /// Use the ambient lattice Z^d instead of the group of the monoid.
        #[arg(long)]
        ambient: bool,
    },
    /// Pyramidal decomposition with the given extremal generator as apex.
    Decompose {
        path: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        apex: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum RowCmd {
    /// Unimodularity witness and isotropy.
    Check {
        path: PathBuf,
        /// Witness search degree bound (monoid rings).
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Reduce a row to e_1 and write the transcript.
    Reduce(ReduceArgs),
}

#[derive(Args)]
struct ReduceArgs {
    path: PathBuf,
    /// Override the form kind of the row document.
    #[arg(long)]
    form: Option<FormArg>,
    /// Comma-separated ideal generators, overriding the document's ideal.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    relative_ideal: Option<Vec<String>>,
    /// field, semilocal, radical, relative, pivot or search. Defaults to
    /// semilocal over coefficient rings and search over monoid rings.
    #[arg(long)]
    procedure: Option<String>,
    /// Transcript path; stdout if absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Monomial degree bound for the search pool over monoid rings.
    #[arg(long, default_value_t = 3)]
    degree: i64,
    #[arg(long, default_value_t = SearchBudget::default().beam_width)]
    beam: usize,
    #[arg(long, default_value_t = SearchBudget::default().max_depth)]
    depth: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Symplectic,
    Orthogonal,
}

#[derive(Subcommand)]
enum TranscriptCmd {
    /// Recompute a transcript and print OK or FAIL.
    Replay { path: PathBuf },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Group membership and the last-column condition.
    Check { path: PathBuf },
    /// Factor a matrix fixing e_2n as word . (beta + Id_2).
    Descend {
        path: PathBuf,
        #[arg(long)]
        word_out: PathBuf,
        #[arg(long)]
        matrix_out: PathBuf,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    Generate {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Seed override.
        #[arg(long, env = SEED_ENV)]
        seed: Option<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Failure { code: 4, message: message.into() }
    }

    fn failed(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        let code = match e {
            GeometryError::DeskScale(_) => 3,
            GeometryError::InvalidMonoid(_) | GeometryError::DimensionMismatch { .. } => 2,
            _ => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Geometry(g @ GeometryError::DeskScale(_)) => g.into(),
            other => Failure::parse(other.to_string()),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        let code = if e.is_precondition() { 4 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    Ok(uj::parse(&text)?)
}

fn write_text(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::failed(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    print!("{}", uj::to_canonical(v));
}

/// Desk-scale limits propagate; a missing precondition becomes `null`.
fn soft<T>(r: Result<T, GeometryError>) -> Result<Option<T>, Failure> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(GeometryError::Precondition(_) | GeometryError::PositivityRequired) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn monoid_analyze(path: &Path, bound: Option<i64>) -> Outcome {
    let m = uj::monoid_from_json(&read_json(path)?)?;
    let positive = m.is_positive();
    let normal = soft(is_normal(&m))?;
    let seminormal = soft(is_seminormal(&m, bound))?;
    let simplicial = soft(is_phi_simplicial(&m))?;
    let k = soft(geometry::complexity(&m))?;
    let extremal = soft(extremal_generators(&m))?;
    let section = match soft(default_section(&m))? {
        Some((alpha, level)) => Some((alpha.clone(), level, section_polytope(&m, &alpha, level)?)),
        None => None,
    };
    let seminormal_detail = match &seminormal {
        Some(SeminormalStatus::Seminormal { certified }) => json!({"status": "seminormal", "certified": certified}),
        Some(SeminormalStatus::NotSeminormal { face, hole }) => {
            json!({"status": "not_seminormal", "face": face, "hole": hole})
        }
        Some(SeminormalStatus::Inconclusive { bound }) => json!({"status": "inconclusive", "bound": bound}),
        None => Value::Null,
    };
    print_json(&json!({
        "rank": m.rank(),
        "ambient_rank": m.ambient_rank(),
        "generators": m.generators(),
        "positive": positive,
        "normal": normal,
        "seminormal": seminormal.as_ref().and_then(SeminormalStatus::as_bool),
        "seminormal_detail": seminormal_detail,
        "phi_simplicial": simplicial,
        "complexity": k,
        "extremal_generators": extremal,
        "section": section.as_ref().map(|(alpha, level, _)| json!({"alpha": alpha, "level": uj::q_to_json(level)})),
        "phi_vertices": section
            .as_ref()
            .map(|(_, _, p)| p.vertices.iter().map(|v| uj::q_vec_to_json(v)).collect::<Vec<_>>()),
    }));
    Ok(())
}

fn monoid_hilbert(path: &Path, ambient: bool) -> Outcome {
    let m = uj::monoid_from_json(&read_json(path)?)?;
    let d = m.ambient_rank();
    let lattice: Vec<Vec<i64>> = if ambient {
        (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
    } else {
        m.lattice_basis().to_vec()
    };
    let basis = hilbert_basis(&m.cone(), &lattice)?;
    print_json(&json!({"lattice": if ambient { "ambient" } else { "group" }, "hilbert_basis": basis}));
    Ok(())
}

fn monoid_decompose(path: &Path, apex: &[i64]) -> Outcome {
    let m = uj::monoid_from_json(&read_json(path)?)?;
    let p = pyramidal_decomposition(&m, apex)?;
    let pts = |v: &[Vec<_>]| v.iter().map(|x| uj::q_vec_to_json(x)).collect::<Vec<_>>();
    print_json(&json!({
        "apex": p.apex,
        "alpha": p.alpha,
        "level": uj::q_to_json(&p.level),
        "delta": pts(&p.delta),
        "gamma": pts(&p.gamma),
        "h": pts(&p.h),
        "degree_functional": p.degree_functional,
    }));
    Ok(())
}

fn row_check(path: &Path, bound: Option<i64>) -> Outcome {
    let doc = read_json(path)?;
    let (carrier, form) = uj::document_header(&doc)?;
    let report = match &carrier {
        Carrier::Scalar(r) => check_report(r, form, &doc, bound, true)?,
        Carrier::Monoid(mr) => check_report(mr, form, &doc, bound, false)?,
    };
    print_json(&report);
    Ok(())
}

fn check_report<R>(r: &R, form: FormKind, doc: &Value, bound: Option<i64>, decisive: bool) -> Result<Value, Failure>
where
    R: JsonCarrier + umrow_core::reduction::WitnessSearch,
{
    let u = uj::entries_from_document(r, form, doc)?;
    let witness = check_unimodular(r, &u, bound)?;
    // Over a coefficient ring a failed search is a proof; over a monoid ring
    // it only means no witness was found below the bound.
    let unimodular = match (&witness, decisive) {
        (Some(_), _) => Some(true),
        (None, true) => Some(false),
        (None, false) => None,
    };
    let isotropic = (!form.is_symplectic()).then(|| r.is_zero(&groups::quadratic_value(r, &u)));
    Ok(json!({
        "form": uj::form_to_json(form),
        "unimodular": unimodular,
        "witness": witness.map(|s| r.row_to_json(&s)),
        "isotropic": isotropic,
    }))
}

fn row_reduce(a: &ReduceArgs) -> Outcome {
    let doc = read_json(&a.path)?;
    let (carrier, doc_form) = uj::document_header(&doc)?;
    let form = match a.form {
        None => doc_form,
        Some(f) => {
            let kind = match f {
                FormArg::Symplectic => FormType::Symplectic,
                FormArg::Orthogonal => FormType::Orthogonal,
            };
            FormKind::new(kind, doc_form.n).map_err(|e| Failure::parse(e.to_string()))?
        }
    };
    let procedure = match &a.procedure {
        Some(p) => Some(p.parse::<Procedure>().map_err(Failure::parse)?),
        None => None,
    };
    let budget = SearchBudget { beam_width: a.beam, max_depth: a.depth, seed: a.seed };
    match &carrier {
        Carrier::Scalar(r) => {
            let u = uj::entries_from_document(r, form, &doc)?;
            let ideal = requested_ideal(r, &doc, a)?;
            let t = match procedure.unwrap_or(Procedure::Semilocal) {
                Procedure::Field => reduce_over_field(r, form, &u)?,
                Procedure::Semilocal => reduce_semilocal(r, form, &u)?,
                Procedure::Radical => reduce_mod_radical(r, form, &u, need_ideal(&ideal, "radical")?)?,
                Procedure::Relative => reduce_relative(r, form, &u, need_ideal(&ideal, "relative")?)?,
                Procedure::Pivot => pivot_reduce(r, form, &u)?,
                Procedure::Search => {
                    let pool = scalar_pool(r);
                    let cost = |x: &_| scalar_cost(r, x);
                    found(bounded_orbit_search(r, form, &u, &pool, &cost, budget)?)?
                }
            };
            emit_transcript(r, &t, a.out.as_deref())
        }
        Carrier::Monoid(mr) => {
            let u = uj::entries_from_document(mr, form, &doc)?;
            let ideal = requested_ideal(mr, &doc, a)?;
            let t = match procedure.unwrap_or(Procedure::Search) {
                Procedure::Field => reduce_over_field(mr, form, &u)?,
                Procedure::Radical => reduce_mod_radical(mr, form, &u, need_ideal(&ideal, "radical")?)?,
                Procedure::Pivot => pivot_reduce(mr, form, &u)?,
                Procedure::Search => {
                    let pool = monomial_pool(mr, a.degree)?;
                    found(bounded_orbit_search(mr, form, &u, &pool, &poly_cost, budget)?)?
                }
                p @ (Procedure::Semilocal | Procedure::Relative) => {
                    return Err(Failure::precondition(format!(
                        "precondition violated: procedure {} needs a coefficient ring, not {}",
                        p.as_str(),
                        mr.describe()
                    )))
                }
            };
            emit_transcript(mr, &t, a.out.as_deref())
        }
    }
}

fn requested_ideal<R: JsonCarrier>(r: &R, doc: &Value, a: &ReduceArgs) -> Result<Option<IdealDescriptor>, Failure> {
    match &a.relative_ideal {
        Some(gens) => {
            let v = json!({"gens": gens});
            Ok(Some(uj::ideal_from_json(r.base_ring(), &v)?))
        }
        None => Ok(uj::ideal_from_document(r, doc)?),
    }
}

fn need_ideal<'a>(ideal: &'a Option<IdealDescriptor>, procedure: &str) -> Result<&'a IdealDescriptor, Failure> {
    ideal
        .as_ref()
        .ok_or_else(|| Failure::precondition(format!("precondition violated: procedure {procedure} needs a relative ideal")))
}

fn found<E>(outcome: SearchOutcome<E>) -> Result<ReductionTranscript<E>, Failure> {
    match outcome {
        SearchOutcome::Found(t) => Ok(t),
        SearchOutcome::Exhausted { explored } => {
            Err(Failure::failed(format!("search budget exhausted after {explored} rows; no unit entry reached")))
        }
    }
}

/// Nonzero search parameters: every element of a small finite ring, else
/// the integers up to 3 in absolute value.
fn scalar_pool(r: &RingDescriptor) -> Vec<umrow_core::coeff_rings::Scalar> {
    let mut pool: Vec<_> = match r.elements() {
        Some(all) => all.into_iter().filter(|x| !r.is_zero(x)).take(64).collect(),
        None => (1..=3).flat_map(|k| [r.from_int(k), r.from_int(-k)]).collect(),
    };
    pool.dedup();
    pool
}

fn emit_transcript<R: JsonCarrier>(r: &R, t: &ReductionTranscript<R::Elem>, out: Option<&Path>) -> Outcome {
    let text = uj::to_canonical(&uj::transcript_to_json(r, t));
    let verdict = t.replay(r)?;
    let lines = verdict_lines(verdict.matches && verdict.reaches_e1, verdict.relative);
    match out {
        Some(p) => {
            write_text(p, &text)?;
            print!("{lines}");
        }
        None => {
            print!("{text}");
            eprint!("{lines}");
        }
    }
    if verdict.ok() && verdict.reaches_e1 {
        Ok(())
    } else {
        Err(Failure::failed("produced transcript does not replay"))
    }
}

fn verdict_lines(ok: bool, relative: Option<bool>) -> String {
    let word = |b: bool| if b { "OK" } else { "FAIL" };
    let mut s = format!("replay: {}\n", word(ok));
    if let Some(rel) = relative {
        s.push_str(&format!("relative: {}\n", word(rel)));
    }
    s
}

fn transcript_replay(path: &Path) -> Outcome {
    let doc = read_json(path)?;
    let (carrier, _) = uj::document_header(&doc)?;
    let verdict = match &carrier {
        Carrier::Scalar(r) => uj::transcript_from_json(r, &doc)?.replay(r),
        Carrier::Monoid(mr) => uj::transcript_from_json(mr, &doc)?.replay(mr),
    }
    .map_err(|e| Failure::parse(e.to_string()))?;
    print!("{}", verdict_lines(verdict.matches, verdict.relative));
    if verdict.ok() {
        Ok(())
    } else {
        Err(Failure::failed("transcript does not replay"))
    }
}

fn group_check(path: &Path) -> Outcome {
    let doc = read_json(path)?;
    let (carrier, form) = uj::document_header(&doc)?;
    let report = match &carrier {
        Carrier::Scalar(r) => group_report(r, form, &doc)?,
        Carrier::Monoid(mr) => group_report(mr, form, &doc)?,
    };
    print_json(&report);
    Ok(())
}

fn group_report<R: JsonCarrier>(r: &R, form: FormKind, doc: &Value) -> Result<Value, Failure> {
    let a = uj::matrix_from_document(r, form, doc)?;
    let size = form.size();
    Ok(json!({
        "form": uj::form_to_json(form),
        "in_group": groups::is_in_group(r, form, &a),
        "fixes_last_basis_vector": a.column(size - 1) == groups::unit_row(r, size, size),
    }))
}

fn group_descend(path: &Path, word_out: &Path, matrix_out: &Path) -> Outcome {
    let doc = read_json(path)?;
    let (carrier, form) = uj::document_header(&doc)?;
    match &carrier {
        Carrier::Scalar(r) => descend_in(r, form, &doc, word_out, matrix_out),
        Carrier::Monoid(mr) => descend_in(mr, form, &doc, word_out, matrix_out),
    }
}

fn descend_in<R: JsonCarrier>(r: &R, form: FormKind, doc: &Value, word_out: &Path, matrix_out: &Path) -> Outcome {
    let alpha = uj::matrix_from_document(r, form, doc)?;
    let d = stabilization_descent(r, form, &alpha)?;
    let word_doc = json!({
        "ring": r.carrier_to_json(),
        "form": uj::form_to_json(form),
        "word": uj::word_to_json(r, &d.epsilon),
    });
    write_text(word_out, &uj::to_canonical(&word_doc))?;
    write_text(matrix_out, &uj::to_canonical(&uj::matrix_document(r, form.smaller(), &d.beta)))?;
    let eps = groups::word_matrix(r, &d.epsilon).map_err(|e| Failure::failed(e.to_string()))?;
    let rebuilt = matrix::mul(r, &eps, &matrix::direct_sum(r, &d.beta, &matrix::identity(r, 2)));
    let ok = rebuilt == alpha;
    println!("tokens: {}", d.epsilon.items.len());
    println!("reconstruction: {}", if ok { "OK" } else { "FAIL" });
    if ok {
        Ok(())
    } else {
        Err(Failure::failed("reconstruction failed"))
    }
}

fn corpus_generate(config: &Path, out: &Path, seed: Option<&str>) -> Outcome {
    let text = fs::read_to_string(config).map_err(|e| Failure::parse(format!("{}: {e}", config.display())))?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    cfg.override_seed(seed)?;
    let c = corpus::generate(&cfg)?;
    fs::create_dir_all(out).map_err(|e| Failure::failed(format!("{}: {e}", out.display())))?;
    for (name, body) in &c.files {
        write_text(&out.join(name), body)?;
    }
    write_text(&out.join("manifest.json"), &c.manifest)?;
    println!("seed {}: wrote {} files and manifest.json to {}", cfg.seed, c.files.len(), out.display());
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Monoid(MonoidCmd::Analyze { path, seminormal_bound }) => monoid_analyze(&path, seminormal_bound),
        Command::Monoid(MonoidCmd::Hilbert { path, ambient }) => monoid_hilbert(&path, ambient),
        Command::Monoid(MonoidCmd::Decompose { path, apex }) => monoid_decompose(&path, &apex),
        Command::Row(RowCmd::Check { path, bound }) => row_check(&path, bound),
        Command::Row(RowCmd::Reduce(args)) => row_reduce(&args),
        Command::Transcript(TranscriptCmd::Replay { path }) => transcript_replay(&path),
        Command::Group(GroupCmd::Check { path }) => group_check(&path),
        Command::Group(GroupCmd::Descend { path, word_out, matrix_out }) => group_descend(&path, &word_out, &matrix_out),
        Command::Corpus(CorpusCmd::Generate { config, out, seed }) => corpus_generate(&config, &out, seed.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(Failure::from(GeometryError::DeskScale("rank 5".into())).code, 3);
        assert_eq!(Failure::from(GeometryError::PositivityRequired).code, 4);
        assert_eq!(Failure::from(ReductionError::Isotropy).code, 4);
        assert_eq!(Failure::from(IoError::Format("x".into())).code, 2);
    }

    #[test]
    fn scalar_pool_has_no_zero() {
        let z6 = RingDescriptor::integers_mod(6).unwrap();
        let pool = scalar_pool(&z6);
        assert_eq!(pool.len(), 5);
        assert!(pool.iter().all(|x| !z6.is_zero(x)));
        assert_eq!(scalar_pool(&RingDescriptor::Integers).len(), 6);
    }

    #[test]
    fn verdict_text() {
        assert_eq!(verdict_lines(true, None), "replay: OK\n");
        assert_eq!(verdict_lines(true, Some(false)), "replay: OK\nrelative: FAIL\n");
    }
}
