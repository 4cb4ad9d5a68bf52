use std::path::Path;

use monodec::alternating::{self, AlternatingWitness, WEAK_ENUMERATION_LIMIT};
use monodec::graphs::{self, WeightedGraph};
use monodec::lp::{self, DecompositionKind};
use monodec::rational::{self, Rational};
use monodec::{coverage, GroundSet, Partition, SetFunction, SubsetMask};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::input::{self, GraphFunction, Instance, Source};
use crate::{Construction, DecomposeKind, GeneratorName, GlobalArgs, GraphReport, Outcome};

/// Default ground-set limit of `check` and of the non-LP decompositions.
pub const CHECK_MAX_N: usize = 12;
/// Default ground-set limit of every LP-based computation.
pub const LP_MAX_N: usize = 10;

fn r(x: &Rational) -> Value {
    Value::String(rational::format(x))
}

fn to_value<T: Serialize>(x: &T) -> CliResult<Value> {
    Ok(serde_json::to_value(x)?)
}

fn header(src: &Source) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("input_sha256".into(), json!(src.sha256));
    m
}

fn extend(m: &mut Map<String, Value>, v: Value) {
    if let Value::Object(o) = v {
        m.extend(o);
    }
}

fn verdict<T: Serialize>(violation: Option<T>) -> CliResult<Value> {
    Ok(json!({ "holds": violation.is_none(), "witness": to_value(&violation)? }))
}

fn require_size(n: usize, limit: usize, what: &str) -> CliResult<()> {
    if n > limit {
        return Err(CliError::Size(format!(
            "{what} on {n} elements exceeds the limit of {limit} (see --max-n)"
        )));
    }
    Ok(())
}

fn load_function(path: &Path, function: GraphFunction) -> CliResult<(Source, SetFunction, String)> {
    let src = Source::read(path)?;
    let (f, label) = input::to_function(input::parse_instance(&src)?, function);
    Ok((src, f, label))
}

/// Weak and strong `k`-alternation for `k = 1..=n`. A weak entry is `null`
/// when its scan exceeds the enumeration limit.
fn alternation_profile(
    f: &SetFunction,
) -> CliResult<(Vec<Value>, Vec<Value>, Option<AlternatingWitness>)> {
    let n = f.n();
    let mut weak = Vec::new();
    let mut strong = Vec::new();
    // Strong k-alternation is weak l-alternation for every l <= k.
    let mut strong_state: Option<Option<AlternatingWitness>> = Some(None);
    let mut weak_inf_witness = None;
    for k in 1..=n {
        let scanned = if alternating::weak_enumeration_cost(n, k) > WEAK_ENUMERATION_LIMIT {
            None
        } else {
            Some(alternating::weak_k_alternating_violation(f, k)?)
        };
        match &scanned {
            Some(w) => weak.push(json!({ "k": k, "holds": w.is_none(), "witness": to_value(w)? })),
            None => weak.push(json!({ "k": k, "holds": null, "witness": null })),
        }
        if k >= 2 && weak_inf_witness.is_none() {
            if let Some(Some(w)) = &scanned {
                weak_inf_witness = Some(w.clone());
            }
        }
        strong_state = match (strong_state, scanned) {
            (Some(Some(w)), _) => Some(Some(w)),
            (Some(None), Some(w)) => Some(w),
            _ => None,
        };
        match &strong_state {
            Some(w) => {
                strong.push(json!({ "k": k, "holds": w.is_none(), "witness": to_value(w)? }))
            }
            None => strong.push(json!({ "k": k, "holds": null, "witness": null })),
        }
    }
    Ok((weak, strong, weak_inf_witness))
}

fn coverage_summary(f: &SetFunction) -> CliResult<Value> {
    let alpha = coverage::to_coefficients(f)?;
    let min = alpha.min().map(|(a, v)| json!({ "set": a, "value": r(v) }));
    let nonzero: Vec<Value> = alpha
        .nonzero()
        .map(|(a, v)| json!({ "set": a, "value": r(v) }))
        .collect();
    Ok(json!({
        "nonnegative": alpha.is_nonnegative(),
        "first_negative": alpha.first_negative(),
        "max_support_size": alpha.max_support_size(),
        "min": min,
        "nonzero": nonzero,
    }))
}

pub fn check(g: &GlobalArgs, path: &Path, function: GraphFunction) -> CliResult<Outcome> {
    let (src, f, label) = load_function(path, function)?;
    require_size(f.n(), g.limit(CHECK_MAX_N)?, "check")?;
    let mut m = header(&src);
    m.insert("input".into(), json!(label));
    m.insert("n".into(), json!(f.n()));
    m.insert("normalized".into(), json!(f.is_normalized()));
    m.insert("norm".into(), r(&f.norm_inf()));
    m.insert("submodular".into(), verdict(f.submodularity_violation())?);
    m.insert(
        "supermodular".into(),
        verdict(f.supermodularity_violation())?,
    );
    m.insert("modular".into(), verdict(f.modularity_violation())?);
    m.insert("increasing".into(), verdict(f.increase_violation())?);
    m.insert("decreasing".into(), verdict(f.decrease_violation())?);
    m.insert("nonnegative".into(), verdict(f.negativity_violation())?);
    if f.is_normalized() {
        let (weak, strong, weak_witness) = alternation_profile(&f)?;
        let weak_inf = alternating::is_weakly_infinite_alternating(&f)?;
        let alpha = coverage::to_coefficients(&f)?;
        m.insert("weakly_alternating".into(), json!(weak));
        m.insert("alternating".into(), json!(strong));
        m.insert(
            "weakly_infinite_alternating".into(),
            json!({ "holds": weak_inf, "witness": if weak_inf { None } else { weak_witness } }),
        );
        m.insert(
            "infinite_alternating".into(),
            json!({ "holds": alpha.is_nonnegative(), "negative_coefficient": alpha.first_negative() }),
        );
        m.insert("coverage".into(), coverage_summary(&f)?);
    } else {
        for key in [
            "weakly_alternating",
            "alternating",
            "weakly_infinite_alternating",
            "infinite_alternating",
            "coverage",
        ] {
            m.insert(key.into(), Value::Null);
        }
    }
    Ok(Value::Object(m).into())
}

fn lp_kind(kind: DecomposeKind) -> Option<DecompositionKind> {
    match kind {
        DecomposeKind::Sum => Some(DecompositionKind::Sum),
        DecomposeKind::Diff => Some(DecompositionKind::Diff),
        _ => None,
    }
}

pub fn decompose(
    g: &GlobalArgs,
    path: &Path,
    kind: DecomposeKind,
    c: Option<&str>,
    construction: Construction,
    function: GraphFunction,
) -> CliResult<Outcome> {
    let (src, f, label) = load_function(path, function)?;
    let mut m = header(&src);
    m.insert("input".into(), json!(label));
    if let Some(lp_kind) = lp_kind(kind) {
        require_size(f.n(), g.limit(LP_MAX_N)?, "decomposition LP")?;
        m.insert("kind".into(), json!(lp_kind.as_str()));
        match c {
            Some(c) => {
                let c = rational::parse(c).map_err(|e| CliError::Input(e.to_string()))?;
                let found = lp::c_bounded_feasible(&f, lp_kind, &c)?;
                m.insert("c".into(), r(&c));
                m.insert("feasible".into(), json!(found.is_some()));
                m.insert("decomposition".into(), to_value(&found)?);
            }
            None => {
                let dec = match lp_kind {
                    DecompositionKind::Sum => lp::optimal_sum_decomposition(&f)?,
                    DecompositionKind::Diff => lp::optimal_diff_decomposition(&f)?,
                };
                if let Some(msg) = dec.violation(&f) {
                    return Err(CliError::Input(format!(
                        "decomposition failed verification: {msg}"
                    )));
                }
                m.insert("part_norm".into(), r(&dec.part_norm()));
                extend(&mut m, to_value(&dec)?);
            }
        }
        return Ok(Value::Object(m).into());
    }
    if c.is_some() {
        return Err(CliError::Input(
            "--c applies only to --kind sum and --kind diff".into(),
        ));
    }
    match kind {
        DecomposeKind::CoverageDiff => {
            let limit = match construction {
                Construction::Canonical => CHECK_MAX_N,
                Construction::Uniform => LP_MAX_N,
            };
            require_size(f.n(), g.limit(limit)?, "coverage decomposition")?;
            m.insert("kind".into(), json!("coverage-diff"));
            let (phi1, phi2) = match construction {
                Construction::Canonical => {
                    m.insert("construction".into(), json!("canonical"));
                    coverage::diff_decompose_canonical(&f)?
                }
                Construction::Uniform => {
                    let u = coverage::diff_decompose_uniform(&f)?;
                    m.insert("construction".into(), json!("uniform"));
                    m.insert("m".into(), r(&u.m));
                    m.insert("witness".into(), to_value(&u.witness)?);
                    (u.phi1, u.phi2)
                }
            };
            m.insert(
                "phi1_infinite_alternating".into(),
                json!(alternating::is_infinite_alternating(&phi1)?),
            );
            m.insert(
                "phi2_infinite_alternating".into(),
                json!(alternating::is_infinite_alternating(&phi2)?),
            );
            m.insert("reconstructs".into(), json!(phi1.checked_sub(&phi2)? == f));
            m.insert("phi1".into(), to_value(&phi1)?);
            m.insert("phi2".into(), to_value(&phi2)?);
        }
        DecomposeKind::WeaklyCanonical => {
            require_size(f.n(), g.limit(CHECK_MAX_N)?, "canonical decomposition")?;
            let pair = lp::weakly_alt_canonical_decomposition(&f)?;
            let bound = lp::verify_seven_bound(&f)?;
            m.insert("kind".into(), json!("weakly-canonical"));
            extend(&mut m, to_value(&pair)?);
            m.insert("seven_bound".into(), to_value(&bound)?);
        }
        DecomposeKind::Sum | DecomposeKind::Diff => unreachable!("handled above"),
    }
    Ok(Value::Object(m).into())
}

fn cuts_report(graph: &WeightedGraph) -> Value {
    let (value, side) = graphs::max_cut(graph);
    let (greedy, greedy_side) = graphs::greedy_local_search_cut(graph);
    json!({
        "total_weight": r(&graph.total_weight()),
        "max_cut": { "value": r(&value), "side": side },
        "greedy_cut": { "value": r(&greedy), "side": greedy_side },
        "bipartite_density": graphs::bipartite_density(graph).as_ref().map(r),
        "triangle_free": graph.is_triangle_free(),
    })
}

fn bounds_report(g: &GlobalArgs, graph: &WeightedGraph) -> CliResult<Value> {
    let clique = graphs::clique_bound(graph)?;
    let nu_bound = graphs::nu_star_bound(graph)?;
    let sum_norm = if graph.n() <= g.limit(LP_MAX_N)? {
        Some(lp::optimal_sum_decomposition(&graph.cut_function())?.objective)
    } else {
        None
    };
    let ordered = sum_norm.as_ref().is_none_or(|s| *s <= clique) && clique <= nu_bound;
    Ok(json!({
        "total_weight": r(&graph.total_weight()),
        "sum_decomposition_norm": sum_norm.as_ref().map(r),
        "clique_bound": r(&clique),
        "nu_star_bound": r(&nu_bound),
        "ordered": ordered,
    }))
}

pub fn graph(g: &GlobalArgs, path: &Path, report: GraphReport) -> CliResult<Outcome> {
    let src = Source::read(path)?;
    let graph = input::parse_graph(&src)?;
    let mut m = header(&src);
    m.insert("n".into(), json!(graph.n()));
    m.insert("edges".into(), json!(graph.edges().len()));
    if matches!(report, GraphReport::Cuts | GraphReport::All) {
        m.insert("cuts".into(), cuts_report(&graph));
    }
    if matches!(report, GraphReport::Triangles | GraphReport::All) {
        m.insert(
            "triangles".into(),
            to_value(&graphs::triangle_lps(&graph)?)?,
        );
    }
    if matches!(report, GraphReport::Bounds | GraphReport::All) {
        m.insert("bounds".into(), bounds_report(g, &graph)?);
    }
    Ok(Value::Object(m).into())
}

fn parse_mask(s: &str) -> CliResult<SubsetMask> {
    let bad = || CliError::Input(format!("invalid mask {s:?}"));
    let bits = if let Some(b) = s.strip_prefix("0b") {
        u32::from_str_radix(b, 2).map_err(|_| bad())?
    } else if let Some(h) = s.strip_prefix("0x") {
        u32::from_str_radix(h, 16).map_err(|_| bad())?
    } else {
        s.parse().map_err(|_| bad())?
    };
    Ok(SubsetMask(bits))
}

fn parse_count(s: &str) -> CliResult<usize> {
    s.parse()
        .map_err(|_| CliError::Input(format!("expected a nonnegative integer, got {s:?}")))
}

fn params_exact<'a>(name: &str, params: &'a [String], count: usize) -> CliResult<&'a [String]> {
    if params.len() != count {
        return Err(CliError::Input(format!(
            "{name} takes {count} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(params)
}

/// Ground set of a mask-based generator: `--n` if given, else the mask's bit length.
fn mask_ground(mask: SubsetMask, n: Option<usize>, at_least: usize) -> CliResult<GroundSet> {
    let bits = (32 - mask.bits().leading_zeros()) as usize;
    let ground = GroundSet::new(n.unwrap_or(bits.max(at_least)))?;
    ground.check(mask)?;
    Ok(ground)
}

pub fn generate(
    name: GeneratorName,
    params: &[String],
    n: Option<usize>,
    as_function: bool,
    function: GraphFunction,
) -> CliResult<Outcome> {
    let one =
        |label: &str| -> CliResult<usize> { parse_count(&params_exact(label, params, 1)?[0]) };
    let instance = match name {
        GeneratorName::Wheel => Instance::Graph(graphs::wheel(one("wheel")?)?),
        GeneratorName::Complete => Instance::Graph(graphs::complete(one("complete")?)?),
        GeneratorName::CompleteMinusEdge => {
            Instance::Graph(graphs::complete_minus_edge(one("complete-minus-edge")?)?)
        }
        GeneratorName::Cycle => Instance::Graph(graphs::cycle(one("cycle")?)?),
        GeneratorName::Path => Instance::Graph(graphs::path(one("path")?)?),
        GeneratorName::CompleteBipartite => {
            let p = params_exact("complete-bipartite", params, 2)?;
            Instance::Graph(graphs::complete_bipartite(
                parse_count(&p[0])?,
                parse_count(&p[1])?,
            )?)
        }
        GeneratorName::CexSum => Instance::Function(graphs::counterexample_sum(one("cex-sum")?)?),
        GeneratorName::CexDiff => {
            Instance::Function(graphs::counterexample_diff(one("cex-diff")?)?)
        }
        GeneratorName::Hyperedge => Instance::Hypergraph(graphs::hyperedge(one("hyperedge")?)?),
        GeneratorName::Lnl => {
            let p = params_exact("lnl", params, 2)?;
            let ell = parse_count(&p[0])?;
            let mask = parse_mask(&p[1])?;
            let ground = mask_ground(mask, n, 0)?;
            Instance::Function(alternating::make_ell_not_ell_plus_one(ground, ell, mask)?)
        }
        GeneratorName::Extremal => {
            let p = params_exact("extremal", params, 1)?;
            let mask = parse_mask(&p[0])?;
            let ground = mask_ground(mask, n, 0)?;
            Instance::Function(coverage::extremal(ground, mask)?)
        }
        GeneratorName::PartitionMatroidRank => {
            if params.is_empty() {
                return Err(CliError::Input(
                    "partition-matroid-rank takes the class sizes".into(),
                ));
            }
            let sizes = params
                .iter()
                .map(|s| parse_count(s))
                .collect::<CliResult<Vec<_>>>()?;
            let total: usize = sizes.iter().sum();
            let ground = GroundSet::new(total)?;
            let mut start = 0;
            let mut classes = Vec::new();
            for size in sizes {
                classes.push(SubsetMask::from_elements(start..start + size));
                start += size;
            }
            Instance::Function(alternating::make_partition_matroid_rank(&Partition::new(
                ground, classes,
            )?))
        }
    };
    let json = match instance {
        Instance::Function(f) => to_value(&f)?,
        Instance::Graph(g) if !as_function => to_value(&g)?,
        Instance::Hypergraph(h) if !as_function => to_value(&h)?,
        other => to_value(&input::to_function(other, function).0)?,
    };
    Ok(json.into())
}

pub fn probe(g: &GlobalArgs, path: &Path, trials: usize) -> CliResult<Outcome> {
    let src = Source::read(path)?;
    let graph = input::parse_graph(&src)?;
    require_size(graph.n(), graphs::PROBE_MAX_VERTICES, "probe")?;
    let report = graphs::conjecture_probe(&graph, trials, g.seed)?;
    let mut m = header(&src);
    extend(&mut m, to_value(&report)?);
    let code = if report.violation.is_some() { 4 } else { 0 };
    Ok(Outcome {
        json: Value::Object(m),
        code,
    })
}
