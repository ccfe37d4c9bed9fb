//! Command-line front end.
//!
//! Every subcommand renders a serializable report as JSON (default), as a
//! plain text table or, where a graph is the result, as Graphviz. Output
//! depends only on the arguments and input files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::degree::{compute_degree, degree_report, DegreeReport};
use crate::analysis::diamond::{is_constant_to_one, is_left_closing, is_right_closing};
use crate::analysis::periodic::enumerate_image_orbits;
use crate::ca::{
    cross_validate, difference_lift_analysis, sum_code_lift_analysis, ClusterMatch, DistinctnessWitness, Family,
    LinearCACode,
};
use crate::error::{Error, Result};
use crate::fiber::monte_carlo::{
    classify_with_joining, FactorMeasure, McParams, DEFAULT_CYL_DEPTH, DEFAULT_SAMPLE_LENGTH, DEFAULT_SEED,
};
use crate::fiber::periodic::analyze_periodic_lifts;
use crate::fiber::report::LiftReport;
use crate::joining::periodic::enumerate_periodic_degree_joinings;
use crate::joining::product::{degree_joining_graph, DegreeJoiningGraph};
use crate::measure::json::{Measure, MeasureJson, Side};
use crate::measure::{BernoulliMeasure, MarkovMeasure};
use crate::rational::{self, Rational};
use crate::shift::automaton::determinize;
use crate::shift::graph::{format_word, GraphJson};
use crate::shift::orbits::PeriodicOrbit;
use crate::shift::perron::spectral_radius;
use crate::shift::structure::{analyze_graph, StructureReport};
use crate::shift::{CodeInput, LabeledGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "fiberlift", version, about = "Degrees, degree joinings and measure lifts of finite-to-one factor codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct McArgs {
    /// Sample length T.
    #[arg(long = "length", default_value_t = DEFAULT_SAMPLE_LENGTH)]
    pub sample_length: usize,
    /// Longest cylinder word compared between coordinates.
    #[arg(long, default_value_t = DEFAULT_CYL_DEPTH)]
    pub cyl_depth: usize,
    /// Clustering threshold; defaults to 5/sqrt(T).
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

impl McArgs {
    fn params(&self) -> McParams {
        McParams {
            sample_length: self.sample_length,
            cyl_depth: self.cyl_depth,
            tolerance: self.tolerance,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Essential part, irreducible components, entropies and closing properties.
    Analyze { input: PathBuf },
    /// Finite-to-one verdict and degree with a magic word.
    Degree { input: PathBuf },
    /// The degree joining graph.
    Joining { input: PathBuf },
    /// Exact lifts of every image orbit up to a period.
    PeriodicLifts {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_period: usize,
    },
    /// Lifts of an ergodic measure on the image, estimated by sampling.
    /// Orbit measures are handled exactly.
    LiftMc {
        input: PathBuf,
        /// Measure file (Bernoulli, Markov or periodic).
        #[arg(long)]
        measure: PathBuf,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Exact lifts for linear CA codes on Z/N, checked against sampling.
    Ca {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        modulus: usize,
        /// Bernoulli weights as comma-separated rationals.
        #[arg(long)]
        vector: String,
        /// Skip the Monte-Carlo cross-check.
        #[arg(long)]
        no_mc: bool,
        #[command(flatten)]
        mc: McArgs,
    },
}

/// 0 on success, 2 on a refused input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_refusal() {
        2
    } else {
        1
    }
}

fn read_code(path: &Path) -> Result<CodeInput> {
    CodeInput::from_json_str(&std::fs::read_to_string(path)?)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn no_dot(command: &str) -> Error {
    Error::InvalidInput(format!("`{command}` has no dot rendering"))
}

pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Analyze { input } => {
            let code = read_code(input)?;
            if cli.format == Format::Dot {
                return Ok(code.graph().to_dot("code"));
            }
            let out = analyze(code.graph())?;
            match cli.format {
                Format::Table => Ok(analyze_table(&out)),
                _ => to_json(&out),
            }
        }
        Command::Degree { input } => {
            let code = read_code(input)?;
            let out = degree_report(code.graph())?;
            match cli.format {
                Format::Json => to_json(&out),
                Format::Table => Ok(degree_table(&out)),
                Format::Dot => Err(no_dot("degree")),
            }
        }
        Command::Joining { input } => {
            let code = read_code(input)?;
            let lambda = degree_joining_graph(code.graph())?;
            match cli.format {
                Format::Dot => Ok(lambda.graph().to_dot("joining")),
                Format::Json => to_json(&joining_output(&lambda)),
                Format::Table => Ok(joining_table(&joining_output(&lambda))),
            }
        }
        Command::PeriodicLifts { input, max_period } => {
            let code = read_code(input)?;
            let out = periodic_lifts(&code, *max_period)?;
            match cli.format {
                Format::Json => to_json(&out),
                Format::Table => Ok(periodic_table(&out)),
                Format::Dot => Err(no_dot("periodic-lifts")),
            }
        }
        Command::LiftMc { input, measure, mc } => {
            let code = read_code(input)?;
            let measure = MeasureJson::from_json_str(&std::fs::read_to_string(measure)?)?;
            let out = lift_mc(&code, &measure, &mc.params())?;
            match cli.format {
                Format::Json => to_json(&out),
                Format::Table => Ok(lift_table(&out)),
                Format::Dot => Err(no_dot("lift-mc")),
            }
        }
        Command::Ca {
            family,
            modulus,
            vector,
            no_mc,
            mc,
        } => {
            let alpha = rational::parse_list(vector)?;
            let out = ca(*family, *modulus, &alpha, (!no_mc).then(|| mc.params()))?;
            match cli.format {
                Format::Json => to_json(&out),
                Format::Table => Ok(ca_table(&out)),
                Format::Dot => Err(no_dot("ca")),
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeOutput {
    pub structure: StructureReport,
    pub entropy_x: f64,
    pub entropy_y: f64,
    /// Closing properties and degree need an irreducible code.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finite_to_one: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_closing: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_closing: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_to_one: Option<bool>,
}

pub fn analyze(g: &LabeledGraph) -> Result<AnalyzeOutput> {
    let structure = analyze_graph(g)?;
    let trimmed = g.trim()?;
    let entropy_x = spectral_radius(&trimmed.adjacency_matrix()).ln();
    let entropy_y = determinize(&trimmed)?.entropy();
    let mut out = AnalyzeOutput {
        structure,
        entropy_x,
        entropy_y,
        finite_to_one: None,
        degree: None,
        right_closing: None,
        left_closing: None,
        constant_to_one: None,
    };
    if out.structure.is_irreducible {
        let r = degree_report(&trimmed)?;
        out.finite_to_one = Some(r.finite_to_one);
        out.degree = r.degree;
        out.right_closing = Some(is_right_closing(&trimmed)?);
        out.left_closing = Some(is_left_closing(&trimmed)?);
        out.constant_to_one = Some(is_constant_to_one(&trimmed)?);
    }
    Ok(out)
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), |v| v.to_string())
}

fn analyze_table(a: &AnalyzeOutput) -> String {
    let s = &a.structure;
    let mut out = String::new();
    let _ = writeln!(out, "essential        {}", s.is_essential);
    let _ = writeln!(out, "trimmed          {}", s.trimmed_symbols.join(" "));
    let _ = writeln!(out, "irreducible      {}", s.is_irreducible);
    for (i, c) in s.components.iter().enumerate() {
        let _ = writeln!(out, "component {i:<6} {} (period {})", c.symbols.join(" "), opt(&c.period));
    }
    let _ = writeln!(out, "entropy_x        {:.12}", a.entropy_x);
    let _ = writeln!(out, "entropy_y        {:.12}", a.entropy_y);
    let _ = writeln!(out, "finite_to_one    {}", opt(&a.finite_to_one));
    let _ = writeln!(out, "degree           {}", opt(&a.degree));
    let _ = writeln!(out, "right_closing    {}", opt(&a.right_closing));
    let _ = writeln!(out, "left_closing     {}", opt(&a.left_closing));
    let _ = writeln!(out, "constant_to_one  {}", opt(&a.constant_to_one));
    out
}

fn degree_table(r: &DegreeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "finite_to_one    {}", r.finite_to_one);
    let _ = writeln!(out, "degree           {}", opt(&r.degree));
    let _ = writeln!(out, "magic_word       {}", opt(&r.magic_word));
    let _ = writeln!(out, "magic_position   {}", opt(&r.magic_position));
    let _ = writeln!(out, "entropy_x        {:.12}", r.entropy_x);
    let _ = writeln!(out, "entropy_y        {:.12}", r.entropy_y);
    out
}

#[derive(Debug, Serialize)]
pub struct JoiningOutput {
    pub degree: usize,
    pub symbols: usize,
    pub irreducible: bool,
    pub components: Vec<Vec<String>>,
    pub graph: GraphJson,
}

fn joining_output(lambda: &DegreeJoiningGraph) -> JoiningOutput {
    let names = lambda.graph().x_symbols();
    JoiningOutput {
        degree: lambda.degree,
        symbols: lambda.len(),
        irreducible: lambda.is_irreducible(),
        components: lambda
            .components
            .iter()
            .map(|c| c.iter().map(|&s| names[s].clone()).collect())
            .collect(),
        graph: lambda.graph().to_json(),
    }
}

fn joining_table(j: &JoiningOutput) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree       {}", j.degree);
    let _ = writeln!(out, "symbols      {}", j.symbols);
    let _ = writeln!(out, "irreducible  {}", j.irreducible);
    for (i, c) in j.components.iter().enumerate() {
        let _ = writeln!(out, "component {i}  {}", c.join(" "));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct OrbitLift {
    /// Lift orbit in domain coordinates.
    pub orbit: String,
    pub multiplicity: usize,
    pub weight: String,
    pub diagonal_mass: String,
}

#[derive(Debug, Serialize)]
pub struct OrbitRow {
    pub orbit: String,
    pub period: usize,
    pub fiber_size: usize,
    pub lifts: Vec<OrbitLift>,
    pub canonical_lift_ergodic: bool,
    /// Number of periodic degree joinings, present when the fiber size
    /// equals the degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_joinings: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joinings_permutation_related: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct PeriodicLiftsOutput {
    pub degree: usize,
    pub max_period: usize,
    pub orbits: Vec<OrbitRow>,
}

pub fn periodic_lifts(code: &CodeInput, max_period: usize) -> Result<PeriodicLiftsOutput> {
    let g = code.graph();
    let degree = compute_degree(g)?.degree;
    let lambda = degree_joining_graph(g)?;
    let mut orbits = Vec::new();
    for y in enumerate_image_orbits(g, max_period)? {
        let dec = analyze_periodic_lifts(g, &y)?;
        let (joinings, related) = match enumerate_periodic_degree_joinings(&lambda, &y) {
            Ok(j) => (Some(j.joinings.len()), Some(j.permutation_related)),
            Err(Error::NotDegreeHost { .. }) => (None, None),
            Err(e) => return Err(e),
        };
        orbits.push(OrbitRow {
            orbit: g.format_y_word(y.word()),
            period: y.period(),
            fiber_size: dec.degree,
            canonical_lift_ergodic: dec.is_ergodic(),
            lifts: dec
                .components
                .iter()
                .map(|c| OrbitLift {
                    orbit: code.format_domain_word(c.orbit.word()),
                    multiplicity: c.multiplicity,
                    weight: rational::format(&c.weight),
                    diagonal_mass: rational::format(&c.diagonal_mass),
                })
                .collect(),
            degree_joinings: joinings,
            joinings_permutation_related: related,
        });
    }
    Ok(PeriodicLiftsOutput {
        degree,
        max_period,
        orbits,
    })
}

fn periodic_table(p: &PeriodicLiftsOutput) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree {}", p.degree);
    let _ = writeln!(out, "{:<10} {:>6} {:>6}  lifts (multiplicity, weight)", "orbit", "period", "fiber");
    for row in &p.orbits {
        let lifts: Vec<String> = row
            .lifts
            .iter()
            .map(|l| format!("{} (x{}, {})", l.orbit, l.multiplicity, l.weight))
            .collect();
        let _ = writeln!(
            out,
            "{:<10} {:>6} {:>6}  {}",
            row.orbit,
            row.period,
            row.fiber_size,
            lifts.join(", ")
        );
    }
    out
}

fn measure_name(m: &Measure, alphabet: &[String]) -> String {
    match m {
        Measure::Bernoulli(b) => crate::ca::bernoulli_name(b.probabilities()),
        Measure::Markov(m) => {
            let rows: Vec<String> = m
                .matrix()
                .iter()
                .map(|r| r.iter().map(rational::format).collect::<Vec<_>>().join(","))
                .collect();
            format!("Markov[{}]", rows.join("; "))
        }
        Measure::Periodic(o) => format!("orbit of {}", format_word(alphabet, o.word())),
    }
}

fn markov_of(m: Measure, states: Vec<String>) -> Result<MarkovMeasure> {
    match m {
        Measure::Bernoulli(b) => MarkovMeasure::from_bernoulli(&b, states),
        Measure::Markov(m) => Ok(m),
        Measure::Periodic(_) => unreachable!("orbit measures are handled exactly"),
    }
}

/// Lifts of a measure given on the domain (pushed forward) or on the image.
pub fn lift_mc(code: &CodeInput, measure: &MeasureJson, params: &McParams) -> Result<LiftReport> {
    let g = code.graph();
    let side = measure.side();
    let alphabet = match side {
        Side::Domain => code.domain_alphabet().to_vec(),
        Side::Image => g.y_symbols().to_vec(),
    };
    let m = measure.resolve(&alphabet)?;
    let name = measure_name(&m, &alphabet);
    if let Measure::Periodic(orbit) = &m {
        let y = match side {
            Side::Image => orbit.clone(),
            Side::Domain => image_orbit(code, orbit)?,
        };
        compute_degree(g)?;
        let dec = analyze_periodic_lifts(g, &y)?;
        let base = format!("orbit of {}", g.format_y_word(y.word()));
        return Ok(dec.report(base, |o| code.format_domain_word(o.word())));
    }
    let factor = match side {
        Side::Image => FactorMeasure::Direct(markov_of(m, alphabet)?),
        Side::Domain => {
            let chain = markov_of(m, alphabet)?;
            let chain = match code.recoding() {
                Some(r) => chain.higher_block(r)?,
                None => MarkovMeasure::on_graph(g, chain.matrix().to_vec())?,
            };
            FactorMeasure::Pushforward(chain)
        }
    };
    let lambda = degree_joining_graph(g)?;
    let mut report = classify_with_joining(&lambda, &factor, params, code.recoding())?.report;
    report.base_measure = match side {
        Side::Domain => format!("image of {name}"),
        Side::Image => name,
    };
    Ok(report)
}

/// Image orbit of a periodic domain point.
fn image_orbit(code: &CodeInput, orbit: &PeriodicOrbit) -> Result<PeriodicOrbit> {
    let x = orbit.word();
    let image = match code {
        CodeInput::Graph(g) => {
            if !g.is_cycle(x) {
                return Err(Error::InvalidInput("orbit is not a cycle of the domain".into()));
            }
            g.label_word(x)
        }
        CodeInput::Block(r) => {
            // enough repetitions to cover one period with full windows
            let reps = r.window.div_ceil(x.len()) + 1;
            let long: Vec<usize> = x.iter().copied().cycle().take(x.len() * reps + r.window - 1).collect();
            let blocks = r
                .encode(&long)
                .ok_or_else(|| Error::InvalidInput("orbit is not a point of the domain".into()))?;
            r.graph.label_word(&blocks[..x.len()])
        }
    };
    PeriodicOrbit::of_point(&image)
}

fn lift_table(r: &LiftReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "base      {}", r.base_measure);
    let _ = writeln!(out, "degree    {}", r.degree);
    let method = match r.method {
        crate::fiber::report::Method::Exact => "exact",
        crate::fiber::report::Method::MonteCarlo => "monte-carlo",
    };
    let _ = writeln!(out, "method    {method}");
    if let Some(mc) = &r.monte_carlo {
        let _ = writeln!(
            out,
            "sample    T={} L={} tau={:.6} seed={} burn_in={}",
            mc.sample_length, mc.cyl_depth, mc.tolerance, mc.seed, mc.burn_in
        );
        let _ = writeln!(out, "spread    within={:.6} between={}", mc.max_within, opt(&mc.min_between.map(|v| format!("{v:.6}"))));
    }
    for l in &r.lifts {
        let mut line = format!("lift      {} x{}", l.measure, l.multiplicity);
        if let Some(w) = &l.weight {
            let _ = write!(line, " weight {w}");
        }
        if let Some(c) = &l.coordinates {
            let _ = write!(line, " coordinates {c:?}");
        }
        if let Some(f) = &l.frequencies {
            let one: Vec<String> = f
                .iter()
                .filter(|(k, _)| k.chars().count() == 1)
                .map(|(k, v)| format!("{k}:{v:.4}"))
                .collect();
            if !one.is_empty() {
                let _ = write!(line, " [{}]", one.join(" "));
            }
        }
        let _ = writeln!(out, "{line}");
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning   {w}");
    }
    out
}

#[derive(Debug, Serialize)]
pub struct CrossCheck {
    pub monte_carlo: LiftReport,
    pub matches: Vec<ClusterMatch>,
}

#[derive(Debug, Serialize)]
pub struct CaOutput {
    pub family: Family,
    pub modulus: usize,
    pub alpha: Vec<String>,
    /// Exact lifts, absent when the exact description does not apply.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<LiftReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<DistinctnessWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_validation: Option<CrossCheck>,
    /// Sampling estimate used in place of the exact description.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<LiftReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn ca(family: Family, modulus: usize, alpha: &[Rational], params: Option<McParams>) -> Result<CaOutput> {
    let mut out = CaOutput {
        family,
        modulus,
        alpha: alpha.iter().map(rational::format).collect(),
        exact: None,
        witnesses: Vec::new(),
        cross_validation: None,
        monte_carlo: None,
        warnings: Vec::new(),
    };
    if alpha.len() != modulus {
        return Err(Error::InvalidInput(format!(
            "probability vector has {} entries for modulus {modulus}",
            alpha.len()
        )));
    }
    let exact = match family {
        Family::Difference => difference_lift_analysis(modulus, alpha),
        Family::Sum => sum_code_lift_analysis(alpha),
    };
    match exact {
        Ok(a) => {
            out.exact = Some(a.report());
            out.witnesses = a.witnesses;
            if let Some(params) = params {
                let cv = cross_validate(family, alpha, &params)?;
                out.cross_validation = Some(CrossCheck {
                    monte_carlo: cv.monte_carlo,
                    matches: cv.matches,
                });
            }
        }
        Err(Error::Degenerate(_)) => {
            // a point mass maps to a fixed point of the image
            let a = alpha.iter().position(|p| *p == rational::one()).expect("point mass");
            let code = LinearCACode::new(family, modulus)?;
            let y = PeriodicOrbit::of_point(&[(2 * a) % modulus])?;
            let dec = analyze_periodic_lifts(code.graph(), &y)?;
            let r = &code.recoding;
            let mut report = dec.report(format!("orbit of {}", code.graph().format_y_word(y.word())), |o| {
                r.format_base_word(&r.base_word(o.word()))
            });
            report.warnings.push("point mass: analyzed as an orbit measure".into());
            out.exact = Some(report);
        }
        Err(Error::HypothesisNotMet(why)) => {
            let Some(params) = params else {
                return Err(Error::HypothesisNotMet(why));
            };
            out.warnings.push(format!("no exact description ({why}); falling back to sampling"));
            let code = LinearCACode::new(family, modulus)?;
            let names: Vec<String> = (0..modulus).map(|i| i.to_string()).collect();
            let chain = MarkovMeasure::from_bernoulli(&BernoulliMeasure::new(alpha.to_vec())?, names)?
                .higher_block(&code.recoding)?;
            let lambda = degree_joining_graph(code.graph())?;
            let mut report =
                classify_with_joining(&lambda, &FactorMeasure::Pushforward(chain), &params, Some(&code.recoding))?.report;
            report.base_measure = format!("image of {}", crate::ca::bernoulli_name(alpha));
            out.monte_carlo = Some(report);
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn ca_table(c: &CaOutput) -> String {
    let mut out = String::new();
    let family = match c.family {
        Family::Difference => "difference",
        Family::Sum => "sum",
    };
    let _ = writeln!(out, "code      {family} mod {}", c.modulus);
    let _ = writeln!(out, "alpha     {}", c.alpha.join(","));
    if let Some(e) = &c.exact {
        out.push_str("[exact]\n");
        out.push_str(&lift_table(e));
    }
    for w in &c.witnesses {
        if let crate::measure::Comparison::Distinct { witness, left, right } = &w.comparison {
            let _ = writeln!(
                out,
                "witness   lifts {} and {} differ on {:?}: {} vs {}",
                w.lifts.0,
                w.lifts.1,
                witness,
                rational::format(left),
                rational::format(right)
            );
        }
    }
    if let Some(cv) = &c.cross_validation {
        out.push_str("[monte-carlo cross-check]\n");
        out.push_str(&lift_table(&cv.monte_carlo));
        for m in &cv.matches {
            let _ = writeln!(out, "match     cluster {} -> lift {} (gap {:.4})", m.cluster, m.lift, m.gap);
        }
    }
    if let Some(mc) = &c.monte_carlo {
        out.push_str("[monte-carlo]\n");
        out.push_str(&lift_table(mc));
    }
    for w in &c.warnings {
        let _ = writeln!(out, "warning   {w}");
    }
    out
}
