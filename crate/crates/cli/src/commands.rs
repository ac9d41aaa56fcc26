use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use polyexp_core::arith::{divisors, format_rat, parse_rat, ArithError, Rat};
use polyexp_core::model::{exp_value, group_relation, mult_independent, EqSystem, Independence, MultRelation};
use polyexp_core::roots::{
    dz_check, dz_feasible, dz_order_bound, enumerate_vanishing_sums, system_order_bound, DzParams, EnumerationSpec,
};
use polyexp_core::search::{
    distance_report, empirical_denominator, finiteness_monitor, grid_cardinality, search_box, translate_check,
    EvalMode, SearchSpec, SolutionRecord, Status,
};
use polyexp_core::specialize::{build_specializations, linear_dimension};
use polyexp_core::subspace::{compute_h, corollary_congruence_lattice, split_space};

use crate::problem::{parse_poly_tuple, parse_problem, ProblemFile};
use crate::report::{cyc, ints, rat, rats, Format, Report, Table};
use crate::CliError;

pub const GROUPED_WARNING: &str = "radical-independence assumption: at points with fractional exponents, \
nonzero verdicts treat distinct radical classes as linearly independent over the cyclotomic field";

#[derive(Debug, Parser)]
#[command(name = "polyexp", version, about = "Exact analysis of rational solutions of polynomial-exponential equations")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Worker threads for grid searches (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Grouped,
}

impl Mode {
    fn eval_mode(self) -> EvalMode {
        match self {
            Mode::Exact => EvalMode::ExactOnly,
            Mode::Grouped => EvalMode::AllowGrouped,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Grouped => "grouped",
        }
    }
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| match e {
        ArithError::FloatForbidden { hint: Some(h), .. } => format!("floats forbidden; write {h}"),
        ArithError::FloatForbidden { hint: None, .. } => "floats forbidden; write p/q".into(),
        other => other.to_string(),
    })
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Equalizing subspace, complement, projections, relation lattice and independence checks.
    Analyze {
        file: PathBuf,
        /// δ used for the root-of-unity order bound.
        #[arg(long, default_value_t = 1)]
        delta: usize,
    },
    /// Every solution on the grid (1/D)ℤᵗ inside the box |q| ≤ B, classified.
    Search {
        file: PathBuf,
        #[arg(long = "box", value_parser = rat_arg)]
        bound: Rat,
        #[arg(long)]
        den: u64,
        #[arg(long, value_enum, default_value = "grouped")]
        mode: Mode,
    },
    /// Search, empirical denominator over the divisors of D, box growth and distances.
    Verify {
        file: PathBuf,
        #[arg(long = "box", value_parser = rat_arg)]
        bound: Rat,
        #[arg(long)]
        den: u64,
        /// Number of box doublings used to test the denominator's stability.
        #[arg(long, default_value_t = 1)]
        growth: u32,
        #[arg(long, value_enum, default_value = "grouped")]
        mode: Mode,
    },
    /// Largest order of a root of unity in a minimal vanishing sum.
    DzBound {
        #[arg(long)]
        terms: usize,
        #[arg(long)]
        delta: usize,
    },
    /// Minimal normalized vanishing sums of roots of unity.
    VanishingSums {
        #[arg(long)]
        max_terms: usize,
        #[arg(long)]
        max_order: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rat_arg, default_value = "1,-1")]
        coeffs: Vec<Rat>,
        /// Keep one sum per Galois orbit.
        #[arg(long)]
        galois_dedup: bool,
    },
    /// Evaluation points with a nonsingular evaluation matrix for a polynomial tuple.
    Specialize { file: PathBuf },
    /// Multiplicative independence of positive rationals.
    MultIndep {
        #[arg(required = true, value_parser = rat_arg)]
        values: Vec<Rat>,
    },
    /// Integer solutions form whole cosets of the relation lattice inside the box.
    TranslateCheck {
        file: PathBuf,
        #[arg(long = "box", value_parser = rat_arg)]
        bound: Rat,
    },
    /// Nondegenerate solution counts over doubling boxes.
    Finiteness {
        file: PathBuf,
        #[arg(long = "box", value_parser = rat_arg)]
        bound: Rat,
        #[arg(long)]
        den: u64,
        #[arg(long)]
        growth: u32,
    },
}

pub fn load_problem(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Analyze { file, delta } => analyze(file, *delta),
        Command::Search {
            file,
            bound,
            den,
            mode,
        } => search(file, bound, *den, *mode),
        Command::Verify {
            file,
            bound,
            den,
            growth,
            mode,
        } => verify(file, bound, *den, *growth, *mode),
        Command::DzBound { terms, delta } => dz_bound(*terms, *delta),
        Command::VanishingSums {
            max_terms,
            max_order,
            coeffs,
            galois_dedup,
        } => vanishing_sums(*max_terms, *max_order, coeffs, *galois_dedup),
        Command::Specialize { file } => specialize(file),
        Command::MultIndep { values } => mult_indep(values),
        Command::TranslateCheck { file, bound } => translate(file, bound),
        Command::Finiteness {
            file,
            bound,
            den,
            growth,
        } => finiteness(file, bound, *den, *growth),
    }
}

fn problem_report(command: &str, file: &Path, problem: &ProblemFile) -> Report {
    let mut r = Report::new(command);
    r.input("file", file.display().to_string());
    r.input("name", problem.name.clone().map_or(Value::Null, Value::from));
    r.input("complement", split_space(&problem.system).fingerprint());
    r
}

fn spec(bound: &Rat, den: u64, mode: Mode) -> Result<SearchSpec, CliError> {
    let mut s = SearchSpec::new(bound.clone(), den)?;
    s.mode = mode.eval_mode();
    Ok(s)
}

/// Whether some grid point can give a fractional exponent, so that the
/// zero test runs in grouped mode there.
fn may_group(sys: &EqSystem, den: u64) -> bool {
    sys.alpha_prime()
        .rows()
        .iter()
        .flatten()
        .flat_map(|c| &c.logs)
        .any(|l| !l.is_zero() && (den > 1 || !l.is_integer()))
}

fn status_cell(s: &Status) -> (Value, Value) {
    match s {
        Status::Nondegenerate => (json!("nondegenerate"), Value::Null),
        Status::Degenerate { witness } => {
            let blocks: Vec<Value> = witness
                .iter()
                .map(|b| Value::Array(b.iter().map(|i| json!(i + 1)).collect()))
                .collect();
            (json!("degenerate"), Value::Array(blocks))
        }
    }
}

fn solutions_table(records: &[SolutionRecord]) -> Table {
    let mut t = Table::new("solutions", &["q", "status", "witness", "zero_mode", "pi", "pi_prime"]);
    for r in records {
        let (status, witness) = status_cell(&r.status);
        t.push(vec![
            rats(&r.q),
            status,
            witness,
            json!(r.zero_mode.as_str()),
            rats(&r.pi),
            rats(&r.pi_prime),
        ]);
    }
    t
}

fn nondegenerate(records: &[SolutionRecord]) -> usize {
    records.iter().filter(|r| r.status.is_nondegenerate()).count()
}

fn flag_grouping(r: &mut Report, sys: &EqSystem, den: u64, records: &[SolutionRecord]) {
    use polyexp_core::search::ZeroMode;
    if may_group(sys, den) || records.iter().any(|x| x.zero_mode == ZeroMode::GroupedRadical) {
        r.warn(GROUPED_WARNING);
    }
}

/// First relation among the normalized exponential bases `β′_ij`, `i ≥ 2`.
fn beta_relation(sys: &EqSystem) -> Option<Vec<BigInt>> {
    let betas: Vec<_> = sys.alpha_prime().rows()[1..]
        .iter()
        .flatten()
        .map(|c| exp_value(std::slice::from_ref(c), &[Rat::one()]))
        .collect();
    group_relation(&betas)
}

fn analyze(file: &Path, delta: usize) -> Result<Report, CliError> {
    let problem = load_problem(file)?;
    let sys = &problem.system;
    let split = split_space(sys);
    let h = compute_h(sys);
    let mut r = problem_report("analyze", file, &problem);
    r.input("delta", delta);

    r.result("variables", sys.t());
    r.result("terms", sys.s());
    r.result("generators", sys.m());
    r.result("coefficient_order", sys.order());
    r.result(
        "generator_independence",
        match sys.genset().independence() {
            Independence::Verified => "verified",
            Independence::AssumedSymbolic => "assumed for symbolic generators",
            Independence::Refuted(_) => "refuted",
        },
    );
    r.result("constant_coefficients", sys.all_constant());
    r.result("dim_v", split.dim_v());
    r.result("v_basis", Value::Array(split.v_basis().iter().map(|v| rats(v)).collect()));
    r.result(
        "v_prime_basis",
        Value::Array(split.complement_indices().iter().map(|j| json!(format!("e{}", j + 1))).collect()),
    );
    r.result("h_rank", h.rank());
    r.result("h_basis", Value::Array(h.basis().iter().map(|b| ints(b)).collect()));
    r.result(
        "normalized_bases_relation",
        beta_relation(sys).map_or(Value::Null, |rel| ints(&rel)),
    );
    r.result("root_order_bound", system_order_bound(sys, delta)?);

    let mut proj = Table::new("projections", &["vector", "pi", "pi_prime"]);
    for j in 0..sys.t() {
        let mut e = vec![Rat::zero(); sys.t()];
        e[j] = Rat::one();
        let (pi, pi_prime) = split.project(&e);
        proj.push(vec![json!(format!("e{}", j + 1)), rats(&pi), rats(&pi_prime)]);
    }
    r.tables.push(proj);

    if *sys.genset().independence() == Independence::AssumedSymbolic {
        r.warn("symbolic generators are assumed multiplicatively independent");
    }
    if beta_relation(sys).is_some() {
        r.warn("the normalized exponential bases are multiplicatively dependent, so finitely many nondegenerate solutions is not guaranteed");
    }
    Ok(r)
}

fn search(file: &Path, bound: &Rat, den: u64, mode: Mode) -> Result<Report, CliError> {
    let problem = load_problem(file)?;
    let sys = &problem.system;
    let spec = spec(bound, den, mode)?;
    let records = search_box(sys, &spec)?;
    let mut r = problem_report("search", file, &problem);
    r.input("box", format_rat(bound));
    r.input("den", den);
    r.input("mode", mode.as_str());
    r.result("grid_points", grid_cardinality(&spec, sys.t()).to_string());
    r.result("solutions", records.len());
    r.result("nondegenerate", nondegenerate(&records));
    r.result("degenerate", records.len() - nondegenerate(&records));
    flag_grouping(&mut r, sys, den, &records);
    r.tables.push(solutions_table(&records));
    Ok(r)
}

fn verify(file: &Path, bound: &Rat, den: u64, growth: u32, mode: Mode) -> Result<Report, CliError> {
    let problem = load_problem(file)?;
    let sys = &problem.system;
    let split = split_space(sys);
    let base = spec(bound, den, mode)?;
    let mut r = problem_report("verify", file, &problem);
    r.input("box", format_rat(bound));
    r.input("den", den);
    r.input("growth", growth);
    r.input("mode", mode.as_str());

    let den_usize = usize::try_from(den).map_err(|_| CliError::Input("denominator too large".into()))?;
    let mut sweep = Table::new("denominator_sweep", &["den", "solutions", "nondegenerate", "n_emp"]);
    let mut records = Vec::new();
    for d in divisors(den_usize) {
        let s = spec(bound, d as u64, mode)?;
        let found = search_box(sys, &s)?;
        let cert = empirical_denominator(&found, &split, &s);
        sweep.push(vec![
            json!(d),
            json!(found.len()),
            json!(nondegenerate(&found)),
            json!(cert.n_emp.to_string()),
        ]);
        if d == den_usize {
            records = found;
        }
    }
    let cert = empirical_denominator(&records, &split, &base);

    let mut grow = Table::new("box_growth", &["box", "nondegenerate", "n_emp"]);
    grow.push(vec![rat(bound), json!(nondegenerate(&records)), json!(cert.n_emp.to_string())]);
    let mut stable = true;
    let mut b = bound.clone();
    for _ in 0..growth {
        b *= Rat::from_integer(2.into());
        let s = base.with_bound(b.clone());
        let found = search_box(sys, &s)?;
        let c = empirical_denominator(&found, &split, &s);
        stable &= c.n_emp == cert.n_emp;
        grow.push(vec![rat(&b), json!(nondegenerate(&found)), json!(c.n_emp.to_string())]);
        flag_grouping(&mut r, sys, den, &found);
    }

    let lattice = corollary_congruence_lattice(sys, &cert.n_emp)?;
    let mut dist = Table::new("distances", &["q", "pi_prime", "nearest", "distance", "log_size"]);
    for row in distance_report(&records, &lattice, &cert.n_emp)? {
        dist.push(vec![
            rats(&row.q),
            rats(&row.pi_prime),
            rats(&row.nearest),
            rat(&row.distance),
            json!(row.log_size),
        ]);
    }

    r.result("n_emp", cert.n_emp.to_string());
    r.result("n_emp_stable", stable);
    r.result("solutions", records.len());
    r.result("nondegenerate", nondegenerate(&records));
    r.result("lattice_basis", Value::Array(lattice.basis().iter().map(|v| ints(v)).collect()));
    flag_grouping(&mut r, sys, den, &records);
    r.tables.push(solutions_table(&records));
    r.tables.push(sweep);
    r.tables.push(grow);
    r.tables.push(dist);
    Ok(r)
}

fn dz_bound(terms: usize, delta: usize) -> Result<Report, CliError> {
    let params = DzParams::new(terms, delta)?;
    let bound = dz_order_bound(params)?;
    let mut r = Report::new("dz-bound");
    r.input("terms", terms);
    r.input("delta", delta);
    r.result("bound", bound.bound);
    r.result("feasible_orders", bound.feasible.clone());
    let check = dz_check(bound.bound, params);
    let mut t = Table::new("bound_factorization", &["prime", "exponent", "divisibility_ok", "contribution"]);
    for p in &check.primes {
        t.push(vec![json!(p.prime), json!(p.exponent), json!(p.divisibility_ok), json!(p.contribution)]);
    }
    r.result("contribution_sum", check.contribution_sum);
    r.result("allowance", check.allowance);
    r.tables.push(t);
    Ok(r)
}

fn vanishing_sums(max_terms: usize, max_order: usize, coeffs: &[Rat], galois_dedup: bool) -> Result<Report, CliError> {
    let sums = enumerate_vanishing_sums(&EnumerationSpec {
        max_terms,
        max_order,
        coefficients: coeffs.to_vec(),
        galois_dedup,
    })?;
    let mut r = Report::new("vanishing-sums");
    r.input("max_terms", max_terms);
    r.input("max_order", max_order);
    r.input("coeffs", rats(coeffs));
    r.input("galois_dedup", galois_dedup);
    let mut t = Table::new("sums", &["order", "terms", "exponents", "coefficients", "dz_feasible"]);
    let mut violations = 0;
    for s in &sums {
        // rational coefficients: the field intersection degree is 1
        let ok = dz_feasible(s.order, DzParams::new(s.k(), 1)?);
        violations += usize::from(!ok);
        t.push(vec![
            json!(s.order),
            json!(s.exponents.len()),
            json!(s.exponents),
            rats(&s.coefficients),
            json!(ok),
        ]);
    }
    r.result("count", sums.len());
    r.result("max_order_found", sums.iter().map(|s| s.order).max());
    r.result("dz_violations", violations);
    r.tables.push(t);
    Ok(r)
}

fn specialize(file: &Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let tuple = parse_poly_tuple(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let (dim, _) = linear_dimension(&tuple);
    let cert = build_specializations(&tuple)?;
    let mut r = Report::new("specialize");
    r.input("file", file.display().to_string());
    r.input("variables", tuple.variables().to_vec());
    r.input("coefficient_order", tuple.order());
    r.result("linear_dimension", dim);
    r.result("selected_entries", cert.selected_basis.iter().map(|i| i + 1).collect::<Vec<_>>());
    r.result("determinant", cyc(&cert.determinant));
    r.result("random_fallback_seed", cert.random_fallback.map(|s| s.to_string()));
    r.result("verified", cert.verify(&tuple));
    let mut pts = Table::new("points", &["row", "point", "values"]);
    for (i, (p, row)) in cert.points.iter().zip(&cert.matrix).enumerate() {
        pts.push(vec![json!(i + 1), rats(p), Value::Array(row.iter().map(cyc).collect())]);
    }
    r.tables.push(pts);
    if let Some(seed) = cert.random_fallback {
        r.warn(format!("spiral budget exhausted; random points drawn with seed {seed}"));
    }
    Ok(r)
}

fn mult_indep(values: &[Rat]) -> Result<Report, CliError> {
    let mut r = Report::new("mult-indep");
    r.input("values", rats(values));
    match mult_independent(values).map_err(|e| CliError::Input(e.to_string()))? {
        MultRelation::Independent => {
            r.result("independent", true);
            r.result("relation", Value::Null);
        }
        MultRelation::Relation(e) => {
            r.result("independent", false);
            r.result("relation", ints(&e));
        }
    }
    Ok(r)
}

fn translate(file: &Path, bound: &Rat) -> Result<Report, CliError> {
    let problem = load_problem(file)?;
    let sys = &problem.system;
    let h = compute_h(sys);
    let b = bound.floor().to_integer();
    // refuses on the hypothesis before any searching
    translate_check(sys, &[], &h, &b)?;
    let s = spec(bound, 1, Mode::Grouped)?;
    let records = search_box(sys, &s)?;
    let verdict = translate_check(sys, &records, &h, &b)?;

    let mut r = problem_report("translate-check", file, &problem);
    r.input("box", format_rat(bound));
    r.result("passed", verdict.passed);
    r.result("h_basis", Value::Array(h.basis().iter().map(|v| ints(v)).collect()));
    r.result("cosets", verdict.cosets.len());
    r.result("missing", Value::Array(verdict.missing.iter().map(|m| ints(m)).collect()));
    let mut t = Table::new("cosets", &["representative", "found", "expected"]);
    for c in &verdict.cosets {
        t.push(vec![ints(&c.representative), json!(c.found), json!(c.expected)]);
    }
    r.tables.push(t);
    flag_grouping(&mut r, sys, 1, &records);
    Ok(r)
}

fn finiteness(file: &Path, bound: &Rat, den: u64, growth: u32) -> Result<Report, CliError> {
    let problem = load_problem(file)?;
    let sys = &problem.system;
    let mut s = spec(bound, den, Mode::Grouped)?;
    s.growth_steps = growth;
    let report = finiteness_monitor(sys, &s)?;
    let mut r = problem_report("finiteness", file, &problem);
    r.input("box", format_rat(bound));
    r.input("den", den);
    r.input("growth", growth);
    r.result("stabilized", report.stabilized);
    let mut t = Table::new("counts", &["box", "nondegenerate"]);
    for row in &report.rows {
        t.push(vec![rat(&row.bound), json!(row.nondegenerate)]);
    }
    r.tables.push(t);
    flag_grouping(&mut r, sys, den, &[]);
    for w in report.warnings {
        r.warn(w);
    }
    Ok(r)
}
