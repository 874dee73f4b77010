//! The `coarsemet` command line.
//!
//! Reports go to standard output as container text: narrative lines are
//! `#` comments and every constructed object is a regular block, so a
//! report loads back with [`Workspace::parse`]. Exit codes: 0 when the
//! construction or verification succeeds, 1 when a checked property fails
//! (the report names a witness), 2 on unreadable or invalid input.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coarse::{
    dominates, family_violation, is_coarse_metric, is_saturated, metric_from_base, saturated_metric,
    structure_from_metric, CoarseStructure, Domination, FamilyViolation,
};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::hyperspace::{
    diamond_pool, hausdorff_metric, hausdorff_structure, lattice_pool, search_counterexample, Hyperspace,
    SearchOutcome,
};
use crate::metric::GenMetric;
use crate::poset::OrderMap;
use crate::props::{
    are_close, bounded_geometry_report, is_bornologous, is_bounded, is_coarsely_connected, is_effectively_proper,
    is_proper, Statement,
};
use crate::relset::{GroundSet, Relation, Subset};
use crate::text::Workspace;
use crate::uniform::{
    has_intersection_closed_base, metric_from_uniform_base, uniformity_from_metric, zero_and_triviality, ZeroMode,
};
use crate::valuation::{
    check_valuation_axioms, coarse_to_uniform, integer_window, is_pseudo_ultra, valuation_metric, Domain,
    PadicRing, UniformityVerdict,
};

#[derive(Debug, Parser)]
#[command(name = "coarsemet", version, about = "Finite coarse and uniform structures and generalized metrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Inputs {
    /// Input files, loaded in order into one workspace.
    #[arg(long = "in", required = true, value_name = "FILE")]
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pool {
    Diamond,
    Lattices,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks metrics for a growth map and families for the coarse axioms.
    /// Without names, checks every metric and family.
    CheckCoarse {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        metric: Vec<String>,
        #[arg(long)]
        family: Vec<String>,
    },
    /// Builds the saturated metric of a structure.
    Saturate {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        structure: String,
    },
    /// Builds the metric of a base of a structure.
    FromBase {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        structure: String,
        #[arg(long)]
        family: String,
    },
    /// Decides whether `metric` is dominated by `other`.
    Dominate {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        metric: String,
        #[arg(long)]
        other: String,
        /// Also decide the reverse direction.
        #[arg(long)]
        both: bool,
    },
    /// Connectedness, boundedness and properties of maps.
    Props {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        metric: String,
        /// The structure the metric must induce; defaults to the induced one.
        #[arg(long)]
        structure: Option<String>,
        /// Comma-separated elements to test for boundedness.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        map: Option<String>,
        /// Metric on the target of `map`.
        #[arg(long)]
        target: Option<String>,
        /// A second map to compare with `map`.
        #[arg(long)]
        close: Option<String>,
    },
    /// Bounded geometry statements with witnesses.
    BoundedGeometry {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        metric: String,
        #[arg(long)]
        structure: Option<String>,
    },
    /// Hausdorff structure of a structure, or Hausdorff metric of a metric.
    Hausdorff {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, conflicts_with = "structure")]
        metric: Option<String>,
        #[arg(long)]
        structure: Option<String>,
    },
    /// Metric of a uniform base and the filter it regenerates.
    Uniformize {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        uniform: String,
        /// Base to build the metric from; defaults to an intersection-closed
        /// base found in the filter.
        #[arg(long)]
        family: Option<String>,
        /// Use `0_U` itself as the zero instead of a formal bottom.
        #[arg(long)]
        literal: bool,
    },
    /// p-adic valuation metric on a window of integers or rationals.
    Padic {
        #[arg(long)]
        prime: u64,
        /// `a..b` (inclusive) or a comma-separated list such as `1/2,3,-4/9`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Bounded search for metrics whose Hausdorff metric misbehaves.
    SearchCounterexample {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Pool::Diamond)]
        pool: Pool,
    },
}

/// Narrative lines plus the objects they describe.
#[derive(Debug, Default)]
struct Report {
    notes: Vec<String>,
    ws: Workspace,
    failed: bool,
}

impl Report {
    fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    fn fail(&mut self, line: impl Into<String>) {
        self.failed = true;
        self.notes.push(format!("FAIL {}", line.into()));
    }

    fn check(&mut self, ok: bool, what: &str) {
        if ok {
            self.note(format!("{what}: yes"));
        } else {
            self.fail(format!("{what}: no"));
        }
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for n in &self.notes {
            let _ = writeln!(out, "# {n}");
        }
        out.push_str(&self.ws.to_text());
        out
    }
}

/// Input errors exit with 2; everything else is a failed property.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::UnknownName { .. }
        | Error::DuplicateName { .. }
        | Error::BadLabels { .. }
        | Error::EmptyGround
        | Error::OutOfRange { .. }
        | Error::InvalidIndex { .. }
        | Error::CarrierMismatch { .. }
        | Error::Capacity { .. }
        | Error::NotPartialOrder(_)
        | Error::NotPrime(_)
        | Error::EmptyFamily
        | Error::EmptySet
        | Error::MissingZero => 2,
        _ => 1,
    }
}

/// Runs one command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let _ = out.write_all(report.render().as_bytes());
            u8::from(report.failed)
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check(e)) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

pub fn main() -> std::process::ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::ExitCode::from(code)
}

enum Failure {
    /// Already formatted with the file it came from.
    Input(String),
    Check(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Check(e)
    }
}

fn load(inputs: &Inputs) -> std::result::Result<Workspace, Failure> {
    let mut ws = Workspace::default();
    for path in &inputs.files {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        ws.extend_from_str(&text).map_err(|e| match e {
            Error::Parse { line, col, msg } => Failure::Input(format!("{}:{line}:{col}: {msg}", path.display())),
            e => Failure::Input(format!("{}: {e}", path.display())),
        })?;
    }
    Ok(ws)
}

fn map_table(phi: &OrderMap) -> String {
    phi.table()
        .iter()
        .enumerate()
        .map(|(a, b)| format!("{a}->{b}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn pairs_text(r: &Relation) -> String {
    let pairs: Vec<String> = r.pairs().map(|(i, j)| format!("({i},{j})")).collect();
    format!("{{{}}}", pairs.join(" "))
}

/// Copies a ground set into the report under the same name.
fn copy_ground(report: &mut Report, ws: &Workspace, name: &str) -> Result<()> {
    if report.ws.grounds.get(name).is_none() {
        report.ws.add_ground(name, ws.ground(name)?.clone())?;
    }
    Ok(())
}

fn add_metric(report: &mut Report, name: &str, ground: &str, index_name: &str, d: &GenMetric) -> Result<()> {
    if report.ws.posets.get(index_name).is_none() {
        report.ws.add_poset(index_name, d.index().clone())?;
    }
    report.ws.add_metric(name, ground, index_name, d.clone())
}

fn add_members(report: &mut Report, prefix: &str, ground: &str, members: &[Relation]) -> Result<Vec<String>> {
    let mut names = Vec::with_capacity(members.len());
    for (k, m) in members.iter().enumerate() {
        let name = format!("{prefix}.{k}");
        report.ws.add_relation(&name, ground, m.clone())?;
        names.push(name);
    }
    Ok(names)
}

/// The structure a command works in: the named one, checked against the
/// metric, or the one the metric induces.
fn structure_for(ws: &Workspace, metric: &GenMetric, name: Option<&str>) -> Result<CoarseStructure> {
    match name {
        Some(s) => {
            let s = ws.structure(s)?.structure.clone();
            crate::props::check_induces(&s, metric)?;
            Ok(s)
        }
        None => crate::coarse::induced_structure(metric),
    }
}

fn execute(command: Command) -> std::result::Result<Report, Failure> {
    let mut r = Report::default();
    match command {
        Command::CheckCoarse { inputs, metric, family } => {
            let ws = load(&inputs)?;
            let (metrics, families) = if metric.is_empty() && family.is_empty() {
                (
                    ws.metrics.names().map(String::from).collect(),
                    ws.families.names().map(String::from).collect(),
                )
            } else {
                (metric, family)
            };
            if metrics.is_empty() && families.is_empty() {
                return Err(Failure::Input("nothing to check: no metric or family given".into()));
            }
            for name in &metrics {
                check_metric(&mut r, &ws, name)?;
            }
            for name in &families {
                check_family(&mut r, &ws, name)?;
            }
        }
        Command::Saturate { inputs, structure } => {
            let ws = load(&inputs)?;
            let entry = ws.structure(&structure)?;
            let sat = saturated_metric(&entry.structure)?;
            copy_ground(&mut r, &ws, &entry.ground)?;
            r.note(format!("saturated metric of {structure}"));
            r.note(format!("|I^E| = {}", sat.lattice.len()));
            let maximal = sat.lattice.poset().top().map_or("none".into(), |t| t.to_string());
            r.note(format!("largest member: {maximal}"));
            r.note(format!("growth map E -> E∘E: {}", map_table(&sat.phi)));
            let names = add_members(&mut r, &format!("{structure}_E"), &entry.ground, sat.lattice.members())?;
            r.ws.add_family(&format!("{structure}_IE"), &entry.ground, &names)?;
            add_metric(&mut r, &format!("{structure}_sat"), &entry.ground, &format!("{structure}_I"), &sat.metric)?;
            r.check(is_saturated(&sat.metric)?, "saturated");
            r.check(structure_from_metric(&sat.cert()) == entry.structure, "induces the structure");
        }
        Command::FromBase {
            inputs,
            structure,
            family,
        } => {
            let ws = load(&inputs)?;
            let s = ws.structure(&structure)?;
            let base = ws.family(&family)?;
            let bm = metric_from_base(&s.structure, &base.members)?;
            copy_ground(&mut r, &ws, &s.ground)?;
            r.note(format!("metric of the base {family} of {structure}"));
            r.note(format!("closure size: {}", bm.closure.len()));
            r.note(format!("totally ordered: {}", bm.closure.poset().is_totally_ordered()));
            r.note(format!("growth map: {}", map_table(&bm.phi)));
            let names = add_members(&mut r, &format!("{family}_bar"), &s.ground, bm.closure.members())?;
            r.ws.add_family(&format!("{family}_closure"), &s.ground, &names)?;
            add_metric(&mut r, &format!("{family}_metric"), &s.ground, &format!("{family}_I"), &bm.metric)?;
            r.check(structure_from_metric(&bm.cert()) == s.structure, "induces the structure");
        }
        Command::Dominate {
            inputs,
            metric,
            other,
            both,
        } => {
            let ws = load(&inputs)?;
            let d = &ws.metric(&metric)?.metric;
            let e = &ws.metric(&other)?.metric;
            report_domination(&mut r, &metric, d, &other, e)?;
            if both {
                report_domination(&mut r, &other, e, &metric, d)?;
            }
        }
        Command::Props {
            inputs,
            metric,
            structure,
            set,
            map,
            target,
            close,
        } => {
            let ws = load(&inputs)?;
            let entry = ws.metric(&metric)?;
            let d = &entry.metric;
            let s = structure_for(&ws, d, structure.as_deref())?;
            r.check(is_coarsely_connected(&s, d)?, "coarsely connected");
            if let Some(set) = set {
                let g = ws.ground(&entry.ground)?;
                let b = parse_set(g, &set)?;
                match is_bounded(&s, d, &b)? {
                    Some((c, a)) => r.note(format!("bounded: yes, inside the ball around {c} of radius {a}")),
                    None => r.fail("bounded: no ball contains the set"),
                }
            }
            if let Some(f_name) = map {
                let f = ws.map(&f_name)?;
                let t_name = target.ok_or_else(|| Failure::Input("--map needs --target".into()))?;
                let dy = &ws.metric(&t_name)?.metric;
                let born = is_bornologous(&f.map, d, dy)?;
                r.check(born.holds, &format!("{f_name} bornologous"));
                note_consistency(&mut r, born.consistent());
                let eff = is_effectively_proper(&f.map, d, dy)?;
                r.check(eff.holds, &format!("{f_name} effectively proper"));
                note_consistency(&mut r, eff.consistent());
                match is_proper(&f.map, d, dy)? {
                    Some(w) => {
                        r.note(format!("{f_name} proper: yes"));
                        let cells: Vec<String> = w
                            .table
                            .iter()
                            .enumerate()
                            .map(|(k, (x, a))| format!("({},{})->({x},{a})", k / w.radii, k % w.radii))
                            .collect();
                        r.note(format!("proper witness (y,beta)->(x,alpha): {}", cells.join(" ")));
                    }
                    None => r.fail(format!("{f_name} proper: no")),
                }
                if let Some(g_name) = close {
                    let g = ws.map(&g_name)?;
                    match are_close(&f.map, &g.map, dy)? {
                        Some(b) => r.note(format!("{f_name} and {g_name} close: yes, within {b}")),
                        None => r.fail(format!("{f_name} and {g_name} close: no")),
                    }
                }
            }
        }
        Command::BoundedGeometry {
            inputs,
            metric,
            structure,
        } => {
            let ws = load(&inputs)?;
            let d = &ws.metric(&metric)?.metric;
            let s = structure_for(&ws, d, structure.as_deref())?;
            let rep = bounded_geometry_report(&s, d)?;
            let mut statement = |name: &str, st: &Statement| {
                let bounds: Vec<String> = st.bounds.iter().map(ToString::to_string).collect();
                let line = format!("{name}: witness {} bounds [{}]", st.witness, bounds.join(" "));
                if st.holds() {
                    r.note(line);
                } else {
                    r.fail(line);
                }
            };
            statement("capacity bound", &rep.capacity_bound);
            statement("separated points", &rep.separated_points);
            statement("disjoint relative balls", &rep.disjoint_relative_balls);
            statement("ball cover", &rep.ball_cover);
            r.check(rep.transfers_hold, "bounds transfer between statements");
            match rep.sandwich {
                Some(ok) => r.check(ok, "cap/ent sandwich"),
                None => r.note("cap/ent sandwich: skipped for this size"),
            }
        }
        Command::Hausdorff {
            inputs,
            metric,
            structure,
        } => {
            let ws = load(&inputs)?;
            match (metric, structure) {
                (Some(m), None) => hausdorff_of_metric(&mut r, &ws, &m)?,
                (None, Some(s)) => {
                    let entry = ws.structure(&s)?;
                    let hs = Hyperspace::new(entry.structure.carrier())?;
                    let h = hausdorff_structure(&entry.structure)?;
                    let ground = format!("{}_P", entry.ground);
                    r.ws.add_ground(&ground, hyperspace_ground(&hs)?)?;
                    r.note(format!("Hausdorff structure of {s} on {} subsets", hs.len()));
                    r.ws.add_structure(&format!("{s}_H"), &ground, h)?;
                }
                _ => return Err(Failure::Input("give exactly one of --metric and --structure".into())),
            }
        }
        Command::Uniformize {
            inputs,
            uniform,
            family,
            literal,
        } => {
            let ws = load(&inputs)?;
            let u = ws.uniform(&uniform)?;
            let (zero, trivial) = zero_and_triviality(&u.base);
            copy_ground(&mut r, &ws, &u.ground)?;
            r.note(format!("0_U = {}", pairs_text(&zero)));
            r.note(format!("trivial: {trivial} (every uniform structure on a finite set is)"));
            r.note(format!("Hausdorff: {}", u.base.filter().is_hausdorff()));
            let base = match &family {
                Some(f) => ws.family(f)?.members.clone(),
                None => {
                    let found = has_intersection_closed_base(&u.base).expect("finite filters are principal");
                    r.note(format!("intersection-closed base found, size {}", found.len()));
                    found
                }
            };
            let mode = if literal { ZeroMode::Literal } else { ZeroMode::FormalBottom };
            r.note(format!("zero: {}", if literal { "0_U" } else { "formal bottom" }));
            let um = metric_from_uniform_base(&u.base, &base, mode)?;
            for (k, level) in um.levels.iter().enumerate() {
                match level {
                    Some(rel) => r.note(format!("level {k}: {}", pairs_text(rel))),
                    None => r.note(format!("level {k}: formal zero")),
                }
            }
            add_metric(&mut r, &format!("{uniform}_metric"), &u.ground, &format!("{uniform}_J"), um.metric())?;
            r.check(um.sublevels_match(), "sublevels equal the base members");
            let back = uniformity_from_metric(&um.cert)?;
            r.check(back.base.filter() == u.base.filter(), "regenerates the filter");
        }
        Command::Padic { prime, window } => padic(&mut r, prime, &window)?,
        Command::SearchCounterexample { n_max, budget, pool } => {
            let posets = match pool {
                Pool::Diamond => diamond_pool(),
                Pool::Lattices => lattice_pool(),
            };
            let rep = search_counterexample(n_max, &posets, budget)?;
            r.note(format!("pool: {pool:?}, up to {n_max} points, budget {budget}"));
            r.note(format!("steps: {}", rep.steps));
            r.note(format!("coarse metrics examined: {}", rep.examined));
            r.note(format!("posets skipped: {}", rep.skipped_posets));
            match rep.outcome {
                SearchOutcome::NoneWithinBounds => r.note("outcome: no counterexample within bounds"),
                SearchOutcome::BudgetExhausted => r.note("outcome: budget exhausted"),
                SearchOutcome::Found(c) => {
                    r.note(format!("outcome: found ({:?}) over pool poset {}", c.question, c.pool_index));
                    if let Some((a, b)) = c.differing {
                        r.note(format!("differing hyperspace pair: ({a}, {b})"));
                    }
                    let n = c.metric.carrier();
                    r.ws.add_ground("X", GroundSet::new(n)?)?;
                    add_metric(&mut r, "found", "X", "I", &c.metric)?;
                }
            }
        }
    }
    Ok(r)
}

fn note_consistency(r: &mut Report, consistent: Option<bool>) {
    match consistent {
        Some(true) => r.note("  agrees with the domination verdict"),
        Some(false) => r.fail("  disagrees with the domination verdict"),
        None => r.note("  domination undetermined for these index sizes"),
    }
}

fn check_metric(r: &mut Report, ws: &Workspace, name: &str) -> Result<()> {
    let d = &ws.metric(name)?.metric;
    if !d.is_semi_metric() {
        r.fail(format!("metric {name}: not a semi-metric"));
        return Ok(());
    }
    match is_coarse_metric(d) {
        Ok(Some(cert)) => r.note(format!(
            "metric {name}: coarse, growth map ({:?}) {}",
            cert.witness(),
            map_table(cert.phi())
        )),
        Ok(None) => {
            let levels = d.sublevels();
            let alpha = (0..levels.len())
                .find(|&a| {
                    let sq = levels[a].then(&levels[a]);
                    !levels.iter().any(|l| sq.le(l))
                })
                .expect("a missing growth value has a witness");
            r.fail(format!("metric {name}: not coarse, D_{alpha} ∘ D_{alpha} lies in no sublevel"));
        }
        Err(Error::NotUpwardDirected) => r.fail(format!("metric {name}: index not upward directed")),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn check_family(r: &mut Report, ws: &Workspace, name: &str) -> Result<()> {
    let f = ws.family(name)?;
    let member = |k: usize| f.names[k].as_str();
    match family_violation(&f.members)? {
        None => {
            let s = CoarseStructure::generate(ws.ground(&f.ground)?.len(), &f.members)?;
            r.note(format!("family {name}: coarse"));
            if r.ws.grounds.get(&f.ground).is_none() {
                r.ws.add_ground(&f.ground, ws.ground(&f.ground)?.clone())?;
            }
            r.ws.add_structure(&format!("{name}_structure"), &f.ground, s)?;
        }
        Some(FamilyViolation::MissingDiagonal) => r.fail(format!("family {name}: the diagonal lies in no member")),
        Some(FamilyViolation::Inverse(i)) => {
            r.fail(format!("family {name}: the inverse of {} lies in no member", member(i)))
        }
        Some(FamilyViolation::Product(i, j)) => r.fail(format!(
            "family {name}: the product of {} and {} lies in no member",
            member(i),
            member(j)
        )),
        Some(FamilyViolation::Union(i, j)) => r.fail(format!(
            "family {name}: the union of {} and {} lies in no member",
            member(i),
            member(j)
        )),
    }
    Ok(())
}

fn report_domination(r: &mut Report, dn: &str, d: &GenMetric, en: &str, e: &GenMetric) -> Result<()> {
    let what = format!("{dn} dominated by {en}");
    match dominates(d, e)? {
        Domination::Increasing { gamma, canonical } => {
            let kind = if canonical { "canonical" } else { "found by search" };
            r.note(format!("{what}: yes, increasing map ({kind}) {}", map_table(&gamma)));
        }
        Domination::OnlyArbitrary { gamma } => r.fail(format!(
            "{what}: no increasing map; a non-increasing one exists: {}",
            map_table(&gamma)
        )),
        Domination::NotDominated => {
            let dl = d.sublevels();
            let witness = e
                .sublevels()
                .iter()
                .position(|l| !dl.iter().any(|m| l.le(m)))
                .map_or(String::new(), |a| format!(", sublevel {a} of {en} lies in no sublevel of {dn}"));
            r.fail(format!("{what}: no{witness}"));
        }
        Domination::Undetermined => r.fail(format!("{what}: undetermined, indices too large to search")),
    }
    Ok(())
}

fn hyperspace_ground(hs: &Hyperspace) -> Result<GroundSet> {
    GroundSet::with_labels(hs.labels())
}

fn hausdorff_of_metric(r: &mut Report, ws: &Workspace, name: &str) -> Result<()> {
    let entry = ws.metric(name)?;
    let hm = hausdorff_metric(&entry.metric)?;
    let ground = format!("{}_P", entry.ground);
    r.ws.add_ground(&ground, hyperspace_ground(&hm.hyperspace)?)?;
    r.note(format!("Hausdorff metric of {name} on {} subsets", hm.hyperspace.len()));
    match &hm.cert {
        Some(c) => r.note(format!("growth map: {}", map_table(c.phi()))),
        None => match is_coarse_metric(&hm.metric)? {
            Some(c) => r.note(format!("growth map ({:?}): {}", c.witness(), map_table(c.phi()))),
            None => r.fail("the Hausdorff metric has no growth map"),
        },
    }
    add_metric(r, &format!("{name}_H"), &ground, &entry.index, &hm.metric)?;
    let idx = entry.metric.index();
    if idx.is_totally_ordered() {
        let cmp = crate::hyperspace::check_induced_hausdorff_structure(&entry.metric)?;
        match cmp.differing {
            None => r.note("induced structure equals the Hausdorff structure: yes"),
            Some((a, b)) => r.fail(format!(
                "induced structure equals the Hausdorff structure: no, they differ at ({a}, {b})"
            )),
        }
    } else {
        r.note("index not totally ordered: structure comparison not certified");
    }
    Ok(())
}

fn parse_set(g: &GroundSet, text: &str) -> Result<Subset> {
    let mut elems = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        elems.push(g.resolve(tok).ok_or_else(|| Error::UnknownName {
            kind: "element",
            name: tok.to_string(),
        })?);
    }
    Subset::from_elems(g.len(), elems)
}

fn parse_window(text: &str) -> Result<(Vec<BigRational>, Domain)> {
    let bad = |msg: String| Error::Parse { line: 1, col: 1, msg };
    if let Some((a, b)) = text.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad(format!("`{a}` is not an integer")))?;
        let b: i64 = b.trim().parse().map_err(|_| bad(format!("`{b}` is not an integer")))?;
        if a > b {
            return Err(Error::EmptySet);
        }
        return Ok((integer_window(a, b), Domain::Integers));
    }
    let mut out = Vec::new();
    let mut domain = Domain::Integers;
    for tok in text.split(',').map(str::trim) {
        let x = match tok.split_once('/') {
            Some((p, q)) => {
                domain = Domain::Rationals;
                let p: BigInt = p.trim().parse().map_err(|_| bad(format!("`{tok}` is not a rational")))?;
                let q: BigInt = q.trim().parse().map_err(|_| bad(format!("`{tok}` is not a rational")))?;
                if q == BigInt::from(0) {
                    return Err(bad(format!("`{tok}` has a zero denominator")));
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(tok.parse().map_err(|_| bad(format!("`{tok}` is not an integer")))?),
        };
        out.push(x);
    }
    Ok((out, domain))
}

fn padic(r: &mut Report, prime: u64, window: &str) -> Result<()> {
    let (window, domain) = parse_window(window)?;
    let ring = PadicRing::new(prime, domain)?;
    let axioms = check_valuation_axioms(&ring, &window)?;
    r.note(format!("prime {prime}, {:?}, window of {} elements", domain, window.len()));
    r.note(format!("axioms checked over {} ordered pairs of the window", axioms.pairs_checked));
    r.check(axioms.product_failures.is_empty(), "valuation of products is additive");
    r.check(axioms.sum_failures.is_empty(), "valuation of sums is at least the minimum");
    r.check(axioms.unit_is_zero, "valuation of 1 is 0");
    r.check(axioms.zero_is_omega, "valuation of 0 is omega");
    if domain == Domain::Rationals {
        r.check(axioms.inverse_failures.is_empty(), "nonzero elements have finite valuation");
    }
    match &axioms.first_strict_sum {
        Some((x, y)) => r.note(format!("strict sum instances: {}, first ({x}, {y})", axioms.strict_sums)),
        None => r.note("strict sum instances: 0"),
    }
    let limit = Limits::current().max_ground;
    if window.len() > limit {
        r.note(format!(
            "metric skipped: the window exceeds the ground limit {limit} ({})",
            crate::config::ENV_MAX_GROUND
        ));
        return Ok(());
    }
    let vm = valuation_metric(&ring, &window)?;
    for (k, x) in window.iter().enumerate() {
        r.note(format!("element {k} = {x}"));
    }
    for (k, v) in vm.levels.iter().enumerate() {
        r.note(format!("index {k} = valuation {v}"));
    }
    r.note(format!("growth map: {}", map_table(vm.coarse.phi())));
    let psi: Vec<String> = vm
        .uniform
        .psi_table()
        .iter()
        .enumerate()
        .filter_map(|(b, g)| g.map(|g| format!("{b}->{g}")))
        .collect();
    r.note(format!("descent map: {}", psi.join(" ")));
    r.check(is_pseudo_ultra(&vm.metric), "pseudo ultra");
    match coarse_to_uniform(&vm.coarse)? {
        UniformityVerdict::Confirmed(_) => r.note("growth image downward cofinal: pseudo uniform confirmed"),
        UniformityVerdict::Inapplicable { uncovered } => {
            r.note(format!("growth image not cofinal below {uncovered}: criterion inapplicable"))
        }
    }
    r.ws.add_ground("W", GroundSet::new(window.len())?)?;
    add_metric(r, &format!("nu{prime}"), "W", "Gamma", &vm.metric)?;
    Ok(())
}
