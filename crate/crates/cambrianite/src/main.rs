//! Command line front end: build a Coxeter system, pick a Coxeter element
//! and a base point, then query, verify, or export the resulting objects.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use cambrian::cluster::{complex_stats, ClusterComplex};
use cambrian::coxeter::{parse_type, CoxeterMatrix, CoxeterSystem, EnumeratedGroup, TypeSpec};
use cambrian::export::{fan_json, polytope_json, polytope_off};
use cambrian::fans::{parse_root, AlmostPositiveRoot, CambrianFan};
use cambrian::polytopes::{
    admissible_halfspaces, associahedron, barycentre, common_vertices, fan_offsets,
    integer_coordinate_check, permutahedron, pointing_check, BasePoint, Polytope,
};
use cambrian::scalar::{Rat, Scalar};
use cambrian::sortable::{singletons_via_prefixes, CambrianData, CoxeterChoice};

#[derive(Parser)]
#[command(name = "cambrianite", version, about = "Permutahedra, Cambrian fans, and generalized associahedra for finite Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Job {
    /// Coxeter type: a name like "A3", "B4", "H3", "I2(7)", or a JSON
    /// object {"coxeter_matrix": [[1,3],[3,1]]}
    r#type: String,
    /// Coxeter element as comma-separated generator names, e.g. s2,s1,s3
    /// (default: all generators in their natural order)
    #[arg(long)]
    c: Option<String>,
    /// Base point weight coefficients, comma-separated positive rationals
    /// (default: all 1)
    #[arg(long)]
    base_point: Option<String>,
    /// Export format: json or off
    #[arg(long)]
    export: Option<String>,
    /// Output path for --export (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Abort if the group has more elements than this
    #[arg(long, default_value_t = 100_000)]
    max_order: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Group order, number of positive roots, longest element
    Group(Job),
    /// The c-sortable elements with their sorting words
    Sortables(Job),
    /// The c-singletons, computed by two independent algorithms
    Singletons(Job),
    /// The permutahedron of the chosen base point
    Perm(Job),
    /// The generalized associahedron of the chosen Coxeter element
    Asso(Job),
    /// The Cambrian fan: labeled rays and maximal cones
    Fan(Job),
    /// The facets of the cluster complex
    Clusters(Job),
    /// Is the given set of almost positive roots c-compatible?
    Compat {
        #[command(flatten)]
        job: Job,
        /// Root strings such as a1, a1+a2, -a3
        roots: Vec<String>,
    },
    /// Vertex barycentres of the permutahedron and the associahedron
    Barycentre(Job),
    /// Run the whole verification suite on one system
    Verify(Job),
}

fn verbose() -> bool {
    std::env::var("CAMBRIANITE_LOG").map_or(false, |v| !v.is_empty())
}

macro_rules! log {
    ($($arg:tt)*) => {
        if verbose() {
            eprintln!($($arg)*);
        }
    };
}

struct Session {
    sys: Arc<CoxeterSystem>,
    group: Arc<EnumeratedGroup>,
    c: CoxeterChoice,
    a: BasePoint,
}

fn build_system(text: &str, max_order: u64) -> anyhow::Result<(Arc<CoxeterSystem>, Arc<EnumeratedGroup>)> {
    let spec: TypeSpec = if text.trim_start().starts_with('{') {
        let doc: serde_json::Value =
            serde_json::from_str(text).context("type is not valid JSON")?;
        let rows = doc
            .get("coxeter_matrix")
            .ok_or_else(|| anyhow!("JSON type needs a coxeter_matrix field"))?;
        let rows: Vec<Vec<u32>> =
            serde_json::from_value(rows.clone()).context("bad coxeter_matrix")?;
        let n = rows.len();
        TypeSpec {
            matrix: CoxeterMatrix::new(rows)?,
            gen_names: (1..=n).map(|i| format!("s{i}")).collect(),
            label: "custom".into(),
            force_unit: false,
        }
    } else {
        parse_type(text)?
    };
    let sys = CoxeterSystem::build(&spec)?;
    log!("built {} (rank {}, {} positive roots)", sys.label, sys.rank(), sys.num_pos_roots());
    let group = Arc::new(sys.enumerate(max_order)?);
    log!("enumerated {} elements", group.order());
    Ok((sys, group))
}

fn open_session(job: &Job) -> anyhow::Result<Session> {
    let (sys, group) = build_system(&job.r#type, job.max_order)?;
    let c = match &job.c {
        Some(text) => CoxeterChoice::parse(&sys, text)?,
        None => CoxeterChoice::new(&sys, (0..sys.rank()).collect())?,
    };
    let coeffs: Vec<Scalar> = match &job.base_point {
        Some(text) => text
            .split(',')
            .map(|tok| {
                let r: Rat = tok
                    .trim()
                    .parse()
                    .map_err(|_| anyhow!("bad base point coefficient {tok}"))?;
                Ok(Scalar::from_rat(&sys.field, r))
            })
            .collect::<anyhow::Result<_>>()?,
        None => vec![Scalar::one(&sys.field); sys.rank()],
    };
    let a = BasePoint::from_coeffs(&sys, coeffs)?;
    Ok(Session { sys, group, c, a })
}

fn write_artifact(job: &Job, content: &str) -> anyhow::Result<()> {
    match &job.out {
        Some(path) => {
            fs::write(path, content)
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => println!("{content}"),
    }
    Ok(())
}

fn export_polytope(
    job: &Job,
    poly: &Polytope,
    c_word: Option<&[usize]>,
    a: &BasePoint,
    words: &[String],
) -> anyhow::Result<()> {
    match job.export.as_deref() {
        None => Ok(()),
        Some("json") => {
            let doc = polytope_json(poly, c_word, a, words);
            write_artifact(job, &serde_json::to_string_pretty(&doc)?)
        }
        Some("off") => write_artifact(job, &polytope_off(poly)?),
        Some(other) => bail!("unknown export format {other}"),
    }
}

fn data_of(session: &Session) -> Arc<CambrianData> {
    Arc::new(CambrianData::new(
        session.sys.clone(),
        session.group.clone(),
        session.c.clone(),
    ))
}

fn scalar_line(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn run_group(job: &Job) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let sys = &session.sys;
    println!("system: {}", sys.label);
    println!("generators: {}", sys.gen_names.join(", "));
    println!("order: {}", session.group.order());
    println!("positive roots: {}", sys.num_pos_roots());
    let w0 = sys.longest_element();
    println!("longest element ({} letters): {}", w0.length(), sys.element_string(&w0));
    Ok(true)
}

fn run_sortables(job: &Job) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let data = data_of(&session);
    let sys = &session.sys;
    println!("coxeter element: {}", sys.word_string(&session.c.word));
    println!("{} c-sortable elements:", data.sortables.len());
    for &wi in &data.sortables {
        let w = &data.group.elements[wi];
        println!("  {}", data.sorting_word(w).display(sys));
    }
    Ok(true)
}

fn run_singletons(job: &Job) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let data = data_of(&session);
    let sys = &session.sys;
    let direct = &data.singletons;
    let prefixes = singletons_via_prefixes(sys, &data.group, &session.c)?;
    println!("coxeter element: {}", sys.word_string(&session.c.word));
    println!("{} c-singletons (descent criterion):", direct.len());
    for &wi in direct {
        println!("  {}", sys.element_string(&data.group.elements[wi]));
    }
    let d: Vec<usize> = direct.clone();
    if d == prefixes {
        println!("prefix algorithm agrees");
        Ok(true)
    } else {
        println!("prefix algorithm DISAGREES:");
        for wi in &prefixes {
            let marker = if d.contains(wi) { ' ' } else { '+' };
            println!(" {marker} {}", sys.element_string(&data.group.elements[*wi]));
        }
        for wi in &d {
            if !prefixes.contains(wi) {
                println!(" - {}", sys.element_string(&data.group.elements[*wi]));
            }
        }
        Ok(false)
    }
}

fn run_perm(job: &Job) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let sys = &session.sys;
    let mut perm = permutahedron(sys, &session.group, &session.a);
    let data = data_of(&session);
    let fan = CambrianFan::build(data.clone())?;
    for i in admissible_halfspaces(&perm, &fan) {
        perm.halfspaces[i].admissible = true;
    }
    println!("permutahedron of {}", sys.label);
    println!("vertices: {}", perm.vertices.len());
    let admissible = perm.halfspaces.iter().filter(|h| h.admissible).count();
    println!("half spaces: {} ({admissible} admissible for c = {})", perm.halfspaces.len(), sys.word_string(&session.c.word));
    let words: Vec<String> = perm
        .vertices
        .iter()
        .map(|v| sys.element_string(&session.group.elements[v.tag]))
        .collect();
    if job.export.is_none() {
        for (v, word) in perm.vertices.iter().zip(&words) {
            println!("  M({word}) = {}", scalar_line(&v.point));
        }
    }
    export_polytope(job, &perm, Some(&session.c.word), &session.a, &words)?;
    Ok(true)
}

fn asso_words(fan: &CambrianFan, ass: &Polytope) -> Vec<String> {
    let sys = &fan.data.sys;
    ass.vertices
        .iter()
        .map(|v| sys.element_string(&fan.data.group.elements[fan.cones[v.tag].sortable]))
        .collect()
}

fn run_asso(job: &Job) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let sys = &session.sys;
    let data = data_of(&session);
    let fan = CambrianFan::build(data)?;
    let ass = associahedron(&fan, &session.a)?;
    println!("associahedron of {} for c = {}", sys.label, sys.word_string(&session.c.word));
    println!("vertices: {}", ass.vertices.len());
    println!("half spaces: {}", ass.halfspaces.len());
    let words = asso_words(&fan, &ass);
    if job.export.is_none() {
        for (v, word) in ass.vertices.iter().zip(&words) {
            println!("  x({word}) = {}", scalar_line(&v.point));
        }
    }
    export_polytope(job, &ass, Some(&session.c.word), &session.a, &words)?;
    Ok(true)
}

fn run_fan(job: &Job) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let sys = &session.sys;
    let data = data_of(&session);
    let fan = CambrianFan::build(data)?;
    println!("cambrian fan of {} for c = {}", sys.label, sys.word_string(&session.c.word));
    println!("rays: {}", fan.rays.len());
    for ray in &fan.rays {
        println!("  {:10} {}", ray.label.unwrap().display(sys), scalar_line(&ray.dir));
    }
    println!("maximal cones: {}", fan.cones.len());
    for cone in &fan.cones {
        let labels: Vec<String> = cone
            .rays
            .iter()
            .map(|&r| fan.rays[r].label.unwrap().display(sys))
            .collect();
        println!(
            "  C({}) = <{}>  ({} chambers)",
            sys.element_string(&fan.data.group.elements[cone.sortable]),
            labels.join(", "),
            cone.chambers.len()
        );
    }
    match job.export.as_deref() {
        None => {}
        Some("json") => {
            let doc = fan_json(&fan);
            write_artifact(job, &serde_json::to_string_pretty(&doc)?)?;
        }
        Some(other) => bail!("unknown export format {other} for a fan"),
    }
    Ok(true)
}

fn run_clusters(job: &Job) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let sys = &session.sys;
    let data = data_of(&session);
    let fan = Arc::new(CambrianFan::build(data)?);
    let complex = ClusterComplex::build(fan)?;
    println!("cluster complex of {} for c = {}", sys.label, sys.word_string(&session.c.word));
    println!("facets: {}", complex.facets.len());
    for facet in complex.facet_strings() {
        println!("  {{{}}}", facet.join(", "));
    }
    let stats = complex_stats(&complex);
    println!("face counts by size: {:?}", stats.f_vector);
    Ok(stats.ok())
}

fn run_compat(job: &Job, roots: &[String]) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let sys = &session.sys;
    let data = data_of(&session);
    let fan = Arc::new(CambrianFan::build(data)?);
    let complex = ClusterComplex::build(fan)?;
    let set: std::collections::BTreeSet<AlmostPositiveRoot> = roots
        .iter()
        .map(|r| parse_root(sys, r))
        .collect::<cambrian::Result<_>>()?;
    let ok = complex.is_compatible(&set);
    let names: Vec<String> = set.iter().map(|r| r.display(sys)).collect();
    println!(
        "{{{}}} is {}c-compatible for c = {}",
        names.join(", "),
        if ok { "" } else { "NOT " },
        sys.word_string(&session.c.word)
    );
    Ok(ok)
}

fn run_barycentre(job: &Job) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let sys = &session.sys;
    let data = data_of(&session);
    let perm = permutahedron(sys, &session.group, &session.a);
    let fan = CambrianFan::build(data)?;
    let ass = associahedron(&fan, &session.a)?;
    let bp = barycentre(&perm);
    let ba = barycentre(&ass);
    println!("permutahedron barycentre: {}", scalar_line(&bp));
    println!("associahedron barycentre: {}", scalar_line(&ba));
    let equal = bp == ba;
    println!("equal: {equal}");
    Ok(equal)
}

fn run_verify(job: &Job) -> anyhow::Result<bool> {
    let session = open_session(job)?;
    let sys = &session.sys;
    let mut all_ok = true;
    let mut check = |name: &str, ok: bool| {
        println!("{name}: {}", if ok { "ok" } else { "FAILED" });
        all_ok &= ok;
    };

    let data = data_of(&session);
    let prefixes = singletons_via_prefixes(sys, &data.group, &session.c)?;
    check(
        "singleton algorithms agree",
        data.singletons == prefixes
            && data.singletons == data.singletons_via_antisortable(),
    );

    let fan = Arc::new(CambrianFan::build(data.clone())?);
    check("ray labeling is a bijection", fan.rays.len() == sys.num_pos_roots() + sys.rank());
    check("chambers lie inside their cones", fan.containment_violations().is_empty());

    let mut perm = permutahedron(sys, &session.group, &session.a);
    for i in admissible_halfspaces(&perm, &fan) {
        perm.halfspaces[i].admissible = true;
    }
    let ass = associahedron(&fan, &session.a)?;
    check("associahedron is simplicial at vertices", {
        let inc = ass.incidence();
        inc.iter()
            .all(|row| row.iter().filter(|&&b| b).count() == sys.rank())
    });
    check(
        "one vertex per sortable element",
        ass.vertices.len() == data.sortables.len(),
    );

    let offsets = fan_offsets(&fan, &session.a);
    let pointing = pointing_check(&fan, &offsets);
    if !pointing.violations.is_empty() {
        log!("pointing violations: {:?}", pointing.violations);
    }
    check("half spaces point at adjacent cones", pointing.ok() && pointing.pairs_checked > 0);

    let singles: std::collections::BTreeSet<usize> =
        data.singletons.iter().copied().collect();
    let common: std::collections::BTreeSet<usize> = common_vertices(&perm, &ass)
        .into_iter()
        .map(|(pv, _)| perm.vertices[pv].tag)
        .collect();
    check("common vertices are exactly the singletons", common == singles);

    let complex = ClusterComplex::build(fan.clone())?;
    let stats = complex_stats(&complex);
    check(
        "cluster complex facets match sortables",
        stats.facet_count == data.sortables.len() && stats.ok(),
    );

    check("barycentres agree", barycentre(&perm) == barycentre(&ass));

    if sys.crystallographic && session.a.point.iter().all(|c| c.is_integer()) {
        check(
            "vertex coordinates are integral",
            integer_coordinate_check(&perm, &session.a)?.is_empty()
                && integer_coordinate_check(&ass, &session.a)?.is_empty(),
        );
    }

    Ok(all_ok)
}

fn is_input_error(err: &anyhow::Error) -> bool {
    match err.downcast_ref::<cambrian::Error>() {
        Some(
            cambrian::Error::Parse(_)
            | cambrian::Error::UnknownType(_)
            | cambrian::Error::NotCoxeterElement(_)
            | cambrian::Error::NotInterior
            | cambrian::Error::DimensionMismatch(_),
        ) => true,
        Some(_) => false,
        // everything that is not a library error came from argument handling
        None => true,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Group(job) => run_group(job),
        Cmd::Sortables(job) => run_sortables(job),
        Cmd::Singletons(job) => run_singletons(job),
        Cmd::Perm(job) => run_perm(job),
        Cmd::Asso(job) => run_asso(job),
        Cmd::Fan(job) => run_fan(job),
        Cmd::Clusters(job) => run_clusters(job),
        Cmd::Compat { job, roots } => run_compat(job, roots),
        Cmd::Barycentre(job) => run_barycentre(job),
        Cmd::Verify(job) => run_verify(job),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            if is_input_error(&err) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
