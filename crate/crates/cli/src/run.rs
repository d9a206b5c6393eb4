use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use tubelat::graph::Graph;
use tubelat::hopf::{self, FormalSum, TubingAlgebra};
use tubelat::poset::{self, Bound, FaceInterval, LatticeFailure, Poset};
use tubelat::verify::{self, Scope, Suite};
use tubelat::weakorder::{self, Arc, Congruence};
use tubelat::{tubing, GraphFamily, Permutation, Tubing};

use crate::{ArcAction, Cli, Command, CongruenceAction, FamilyProperty, GraphArg, Property, SuiteArg};

/// Runs one command; `Ok(false)` means the property checked is false.
pub fn dispatch(cli: &Cli) -> Result<bool> {
    let out = Output { json: cli.json };
    match &cli.command {
        Command::Tubings { graph, count, forests } => tubings(&out, &load_graph(graph)?, *count, *forests),
        Command::Poset { graph } => poset_cmd(&out, &load_graph(graph)?),
        Command::Check { property, graph, meet_only, join_only, minimal_minors } => {
            let g = load_graph(graph)?;
            match property {
                Property::Filled => check_filled(&out, &g),
                Property::Lattice => check_lattice(&out, &g, *minimal_minors),
                Property::Semidistributive => check_semidistributive(&out, &g),
                Property::LatticeMap => check_lattice_map(&out, &g, *meet_only, *join_only),
                Property::Nrc => check_nrc(&out, &g),
            }
        }
        Command::Psi { graph, perm } => psi_cmd(&out, &load_graph(graph)?, perm),
        Command::Congruence { action, graph, arcs, n } => congruence_cmd(&out, *action, graph, arcs.as_deref(), *n),
        Command::Arc { action, arc, n, vertex, of } => arc_cmd(&out, *action, arc, *n, *vertex, of.as_deref()),
        Command::Product { family, left, right } => product_cmd(&out, family.as_deref(), left, right),
        Command::Coproduct { family, element } => coproduct_cmd(&out, family.as_deref(), element),
        Command::Mobius { graph, tubing } => mobius_cmd(&out, &load_graph(graph)?, tubing.as_deref()),
        Command::Family { property, family, max_n } => family_cmd(&out, *property, &family.family, *max_n),
        Command::Verify { suite, max_n } => verify_cmd(&out, *suite, *max_n),
        Command::ExportDot { graph } => export_dot(&load_graph(graph)?),
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, human: impl FnOnce() -> String, json: impl FnOnce() -> Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&json()).expect("serializable"));
        } else {
            let text = human();
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
    }
}

fn load_graph(arg: &GraphArg) -> Result<Graph> {
    match (&arg.graph, &arg.graph_file) {
        (Some(desc), _) => Ok(Graph::from_descriptor(desc)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(Graph::parse_file_contents(&text)?)
        }
        (None, None) => bail!("pass --graph or --graph-file"),
    }
}

fn tubes_json(x: &Tubing) -> Value {
    json!(x.tubes().iter().map(|t| t.to_vec()).collect::<Vec<_>>())
}

fn sorted_tubings(g: &Graph) -> Vec<Tubing> {
    let mut v = tubing::enumerate_maximal_tubings(g);
    v.sort();
    v
}

fn tubings(out: &Output, g: &Graph, count: bool, forests: bool) -> Result<bool> {
    let all = sorted_tubings(g);
    if count {
        out.emit(|| all.len().to_string(), || json!({ "count": all.len() }));
    } else if forests {
        let fs: Vec<tubing::GForest> = all.iter().map(tubing::tau).collect::<tubelat::Result<_>>()?;
        out.emit(
            || fs.iter().map(|t| format!("{:?}\n", t.parents())).collect(),
            || json!(fs.iter().map(|t| t.to_json(g)).collect::<Vec<_>>()),
        );
    } else {
        out.emit(|| all.iter().map(|x| format!("{x}\n")).collect(), || json!(all.iter().map(|x| x.to_json(g)).collect::<Vec<_>>()));
    }
    Ok(true)
}

fn poset_cmd(out: &Output, g: &Graph) -> Result<bool> {
    let lg = poset::build_lg(g)?;
    out.emit(
        || {
            let mut s = format!(
                "L_G: {} elements, {} covers, lattice: {}\n",
                lg.len(),
                lg.covers().len(),
                lg.is_lattice()
            );
            for (k, x) in lg.elements().iter().enumerate() {
                s += &format!("{k:>4}  {x}\n");
            }
            s += "covers:\n";
            for (a, b) in lg.covers() {
                s += &format!("{a:>4} -> {b}\n");
            }
            s
        },
        || lg.to_json(tubes_json),
    );
    Ok(true)
}

fn check_filled(out: &Output, g: &Graph) -> Result<bool> {
    let st = g.filled_status();
    let w = g.filled_violation();
    out.emit(
        || {
            let mut s = format!("filled: {}\nright-filled: {}\nleft-filled: {}\n", st.filled, st.right_filled, st.left_filled);
            if let Some(w) = &w {
                s += &format!("witness: edge {:?} missing {:?}\n", w.edge, w.missing);
            }
            s
        },
        || {
            json!({
                "filled": st.filled,
                "right_filled": st.right_filled,
                "left_filled": st.left_filled,
                "witness": w.as_ref().map(|w| json!({ "edge": [w.edge.0, w.edge.1], "missing": [w.missing.0, w.missing.1] })),
            })
        },
    );
    Ok(st.filled)
}

fn describe_failure(lg: &Poset<Tubing>, f: &LatticeFailure) -> String {
    let (what, bounds) = match f.missing {
        Bound::Meet => ("meet", "maximal lower bounds"),
        Bound::Join => ("join", "minimal upper bounds"),
    };
    let listed: Vec<String> = f.bounds.iter().map(|&b| lg.element(b).to_string()).collect();
    format!(
        "{} and {} have no {what}; {bounds}: {}",
        lg.element(f.x),
        lg.element(f.y),
        if listed.is_empty() { "none".into() } else { listed.join(", ") }
    )
}

fn failure_json(lg: &Poset<Tubing>, f: &LatticeFailure) -> Value {
    json!({
        "x": tubes_json(lg.element(f.x)),
        "y": tubes_json(lg.element(f.y)),
        "missing": if f.missing == Bound::Meet { "meet" } else { "join" },
        "bounds": f.bounds.iter().map(|&b| tubes_json(lg.element(b))).collect::<Vec<_>>(),
    })
}

/// Minors whose `L_G` is not a lattice while every proper minor's is.
fn minimal_nonlattice_minors(g: &Graph) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for h in g.minors() {
        if poset::build_lg(&h)?.is_lattice() {
            continue;
        }
        let mut proper = h.minors().into_iter().filter(|m| *m != h);
        if proper.all(|m| poset::build_lg(&m).map(|l| l.is_lattice()).unwrap_or(true)) {
            out.push(h);
        }
    }
    Ok(out)
}

fn check_lattice(out: &Output, g: &Graph, minors: bool) -> Result<bool> {
    let lg = poset::build_lg(g)?;
    let f = lg.lattice_failure();
    let mins = if minors { Some(minimal_nonlattice_minors(g)?) } else { None };
    out.emit(
        || {
            let mut s = format!("lattice: {}\n", f.is_none());
            if let Some(f) = &f {
                s += &format!("witness: {}\n", describe_failure(&lg, f));
            }
            if let Some(m) = &mins {
                s += &format!("minimal non-lattice minors: {}\n", m.len());
                for h in m {
                    s += &format!("  n={} edges={:?}\n", h.n(), h.edges());
                }
            }
            s
        },
        || {
            json!({
                "lattice": f.is_none(),
                "witness": f.as_ref().map(|f| failure_json(&lg, f)),
                "minimal_nonlattice_minors": mins.as_ref().map(|m| m.iter().map(Graph::to_json).collect::<Vec<_>>()),
            })
        },
    );
    Ok(f.is_none())
}

fn check_semidistributive(out: &Output, g: &Graph) -> Result<bool> {
    let lg = poset::build_lg(g)?;
    if let Some(f) = lg.lattice_failure() {
        out.emit(
            || format!("semidistributive: false\nnot a lattice: {}\n", describe_failure(&lg, &f)),
            || json!({ "semidistributive": false, "lattice": false, "witness": failure_json(&lg, &f) }),
        );
        return Ok(false);
    }
    let w = lg.semidistributive_failure()?;
    out.emit(
        || match &w {
            None => "semidistributive: true\n".into(),
            Some(w) => format!(
                "semidistributive: false\nwitness (SD{}): x={} y={} z={}\n",
                if w.law == Bound::Meet { "∧" } else { "∨" },
                lg.element(w.x),
                lg.element(w.y),
                lg.element(w.z)
            ),
        },
        || {
            json!({
                "semidistributive": w.is_none(),
                "lattice": true,
                "witness": w.as_ref().map(|w| json!({
                    "law": if w.law == Bound::Meet { "meet" } else { "join" },
                    "x": tubes_json(lg.element(w.x)),
                    "y": tubes_json(lg.element(w.y)),
                    "z": tubes_json(lg.element(w.z)),
                })),
            })
        },
    );
    Ok(w.is_none())
}

fn check_lattice_map(out: &Output, g: &Graph, meet_only: bool, join_only: bool) -> Result<bool> {
    let lg = poset::build_lg(g)?;
    let meet = if join_only { None } else { weakorder::psi_meet_failure(g, &lg) };
    let join = if meet_only { None } else { weakorder::psi_join_failure(g, &lg) };
    let holds = meet.is_none() && join.is_none();
    let line = |op: &str, w: &weakorder::MapWitness| {
        format!(
            "witness: Ψ({} {op} {}) = {}, but Ψ({}) {op} Ψ({}) = {}\n",
            w.u,
            w.w,
            w.image,
            w.u,
            w.w,
            w.expected.as_deref().unwrap_or("undefined")
        )
    };
    out.emit(
        || {
            let mut s = format!("lattice map: {holds}\n");
            if let Some(w) = &meet {
                s += &line("∧", w);
            }
            if let Some(w) = &join {
                s += &line("∨", w);
            }
            s
        },
        || json!({ "lattice_map": holds, "meet_failure": meet, "join_failure": join }),
    );
    Ok(holds)
}

fn check_nrc(out: &Output, g: &Graph) -> Result<bool> {
    let lg = poset::build_lg(g)?;
    let lattice = lg.is_lattice();
    let (mut faces, mut mobius) = (0usize, 0usize);
    let mut failure = None;
    let mut mismatches = Vec::new();
    for y in tubing::all_tubings(g) {
        match poset::face_interval_in(&lg, &y) {
            FaceInterval::Interval { bottom, top, .. } => {
                faces += 1;
                if y.with_components(g) == y {
                    let mu = lg.mobius(bottom, top)?;
                    let want = if (g.n() - y.len()).is_multiple_of(2) { 1 } else { -1 };
                    if mu == want {
                        mobius += 1;
                    } else if lattice {
                        failure.get_or_insert(format!("μ over {y} is {mu}, expected {want}"));
                    } else {
                        mismatches.push(format!("{y}: μ = {mu}"));
                    }
                }
            }
            other => {
                failure.get_or_insert(format!("tubings containing {y}: {other:?}"));
            }
        }
    }
    let holds = failure.is_none();
    out.emit(
        || {
            let mut s = format!("faces are intervals and Möbius values hold: {holds}\n{faces} face intervals, {mobius} Möbius values as predicted\n");
            if !lattice {
                s += &format!("L_G is not a lattice; Möbius mismatches (not asserted): {}\n", mismatches.len());
            }
            if let Some(f) = &failure {
                s += &format!("witness: {f}\n");
            }
            s
        },
        || json!({ "holds": holds, "lattice": lattice, "faces": faces, "mobius_confirmed": mobius, "mobius_mismatches": mismatches, "witness": failure }),
    );
    Ok(holds)
}

fn psi_cmd(out: &Output, g: &Graph, perm: &str) -> Result<bool> {
    let w: Permutation = perm.parse()?;
    let x = tubing::psi(g, &w)?;
    let t = tubing::tau(&x)?;
    let gperm = weakorder::is_g_permutation(g, &w);
    let down = if g.is_right_filled() { Some(weakorder::pi_down(g, &w)?) } else { None };
    out.emit(
        || {
            let mut s = format!("Ψ({w}) = {x}\nG-tree parents: {:?}\nG-permutation: {gperm}\n", t.parents());
            if let Some(d) = &down {
                s += &format!("π↓({w}) = {d}\n");
            }
            s
        },
        || {
            json!({
                "tubing": x.to_json(g),
                "parent": t.parents(),
                "g_permutation": gperm,
                "pi_down": down.as_ref().map(|d| d.to_string()),
            })
        },
    );
    Ok(true)
}

fn parse_arcs(list: &str, n: usize) -> Result<Vec<Arc>> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| Ok(Arc::parse(s, n)?)).collect()
}

fn congruence_cmd(out: &Output, action: CongruenceAction, graph: &GraphArg, arcs: Option<&str>, n: Option<usize>) -> Result<bool> {
    let c = match (arcs, n) {
        (Some(list), Some(n)) => Congruence::from_generators(n, &parse_arcs(list, n)?)?,
        _ => weakorder::theta_g(&load_graph(graph)?)?,
    };
    match action {
        CongruenceAction::Generators => out.emit(
            || {
                let g: Vec<String> = c.generators().iter().map(|a| a.to_string()).collect();
                format!("generators ({}): {}\n", g.len(), g.join(" "))
            },
            || c.to_json(),
        ),
        CongruenceAction::Classes => {
            let classes = c.classes();
            out.emit(
                || classes.iter().map(|k| k.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ") + "\n").collect(),
                || json!(classes.iter().map(|k| k.iter().map(|w| w.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
            )
        }
        CongruenceAction::Quotient => {
            let q = c.quotient_poset();
            out.emit(
                || {
                    let mut s = format!("quotient: {} classes, {} covers\n", q.len(), q.covers().len());
                    for (a, b) in q.covers() {
                        s += &format!("{} -> {}\n", q.element(*a), q.element(*b));
                    }
                    s
                },
                || q.to_json(|w| json!(w.to_string())),
            )
        }
    }
    Ok(true)
}

fn arc_cmd(out: &Output, action: ArcAction, arc: &str, n: usize, vertex: Option<usize>, of: Option<&str>) -> Result<bool> {
    let alpha = Arc::parse(arc, n)?;
    match action {
        ArcAction::Delete => {
            let v = vertex.ok_or_else(|| anyhow!("--vertex is required"))?;
            let beta = weakorder::arc_delete(&alpha, v)?;
            out.emit(|| format!("{beta}"), || json!({ "arc": beta, "n": n - 1 }));
            Ok(true)
        }
        ArcAction::Insert => {
            let v = vertex.ok_or_else(|| anyhow!("--vertex is required"))?;
            let betas = weakorder::arc_insertions(&alpha, v)?;
            out.emit(|| betas.iter().map(|b| format!("{b}\n")).collect(), || json!({ "arcs": betas, "n": n + 1 }));
            Ok(true)
        }
        ArcAction::Subarc => {
            let beta = Arc::parse(of.ok_or_else(|| anyhow!("--of is required"))?, n)?;
            let holds = weakorder::is_subarc(&alpha, &beta);
            out.emit(|| format!("{alpha} is a subarc of {beta}: {holds}"), || json!({ "subarc": holds }));
            Ok(holds)
        }
    }
}

/// Parse `{1}{1,2}` as a maximal tubing of `G_n`, with `n` the largest vertex named.
fn parse_family_tubing(alg: &TubingAlgebra, s: &str) -> Result<Tubing> {
    let n = s
        .split(|c: char| !c.is_ascii_digit())
        .filter(|t| !t.is_empty())
        .map(str::parse::<usize>)
        .try_fold(0, |m, v| v.map(|v| m.max(v)))?;
    if n == 0 {
        return Ok(Tubing::empty(0));
    }
    let x = Tubing::parse(&alg.graph(n), s)?;
    if !x.is_maximal() {
        bail!("{x} is not a maximal tubing of {}_{n}", alg.family().name());
    }
    Ok(x)
}

fn emit_sum<K: hopf::BasisKey>(out: &Output, s: &FormalSum<K>) {
    out.emit(|| s.to_string(), || s.to_json());
}

fn product_cmd(out: &Output, family: Option<&str>, left: &str, right: &str) -> Result<bool> {
    match family {
        Some(f) => {
            let alg = TubingAlgebra::new(GraphFamily::from_descriptor(f)?);
            let (x, y) = (parse_family_tubing(&alg, left)?, parse_family_tubing(&alg, right)?);
            emit_sum(out, &alg.product(&x, &y)?);
        }
        None => emit_sum(out, &hopf::mr_product(&left.parse()?, &right.parse()?)),
    }
    Ok(true)
}

fn coproduct_cmd(out: &Output, family: Option<&str>, element: &str) -> Result<bool> {
    match family {
        Some(f) => {
            let alg = TubingAlgebra::new(GraphFamily::from_descriptor(f)?);
            emit_sum(out, &alg.coproduct(&parse_family_tubing(&alg, element)?)?);
        }
        None => emit_sum(out, &hopf::mr_coproduct(&element.parse()?)),
    }
    Ok(true)
}

fn mobius_cmd(out: &Output, g: &Graph, y: Option<&str>) -> Result<bool> {
    let lg = poset::build_lg(g)?;
    let y = match y {
        Some(s) => Tubing::parse(g, s)?,
        None => Tubing::empty(g.n()).with_components(g),
    };
    match poset::face_interval_in(&lg, &y) {
        FaceInterval::Interval { bottom, top, size } => {
            let mu = lg.mobius(bottom, top)?;
            let predicted = (y.with_components(g) == y).then(|| if (g.n() - y.len()).is_multiple_of(2) { 1 } else { -1 });
            out.emit(
                || {
                    let mut s = format!("interval [{}, {}] with {size} elements\nμ = {mu}\n", lg.element(bottom), lg.element(top));
                    if let Some(p) = predicted {
                        s += &format!("predicted (−1)^(n−|Y|) = {p}{}\n", if lg.is_lattice() { "" } else { " (L_G is not a lattice)" });
                    }
                    s
                },
                || json!({ "mobius": mu, "size": size, "bottom": tubes_json(lg.element(bottom)), "top": tubes_json(lg.element(top)), "predicted": predicted, "lattice": lg.is_lattice() }),
            );
            Ok(true)
        }
        other => {
            out.emit(|| format!("not an interval: {other:?}"), || json!({ "interval": false, "detail": format!("{other:?}") }));
            Ok(false)
        }
    }
}

fn family_cmd(out: &Output, property: FamilyProperty, family: &str, max_n: usize) -> Result<bool> {
    let fam = GraphFamily::from_descriptor(family)?;
    let check = match property {
        FamilyProperty::Admissible => hopf::is_admissible(&fam, max_n),
        FamilyProperty::RestrictionCompatible => hopf::is_restriction_compatible(&fam, max_n),
        FamilyProperty::Translational => weakorder::is_translational(&fam, max_n)?,
        FamilyProperty::Insertional => weakorder::is_insertional(&fam, max_n)?,
        FamilyProperty::Associative => hopf::check_associativity(&fam, max_n)?,
        FamilyProperty::RecoverA => {
            let a = hopf::recover_a(&fam, max_n);
            out.emit(|| format!("A = {a} (read through degree {max_n})"), || json!({ "A": a.to_string(), "through": max_n }));
            return Ok(true);
        }
    };
    out.emit(|| check.to_string(), || json!(check));
    Ok(check.holds)
}

fn verify_cmd(out: &Output, suite: SuiteArg, max_n: Option<usize>) -> Result<bool> {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Criteria => Suite::Criteria,
        SuiteArg::Examples => Suite::Examples,
        SuiteArg::Mobius => Suite::Mobius,
    };
    let outcomes = verify::run_suite(suite, Scope { max_n });
    out.emit(
        || {
            outcomes
                .iter()
                .map(|o| format!("{} {:<28} {} [{} ms] {}\n", o.status(), o.id, o.title, o.elapsed_ms, o.detail))
                .collect()
        },
        || json!(outcomes),
    );
    Ok(outcomes.iter().all(|o| o.status() != "FAIL"))
}

fn export_dot(g: &Graph) -> Result<bool> {
    let lg = poset::build_lg(g)?;
    let (highlight, note) = match lg.join_failure().or_else(|| lg.meet_failure()) {
        Some(f) => {
            let mut h = vec![f.x, f.y];
            h.extend(&f.bounds);
            (h, Some(format!("not a lattice: {}", describe_failure(&lg, &f))))
        }
        None => (Vec::new(), None),
    };
    print!("{}", lg.to_dot(|x| x.to_string(), &highlight, note.as_deref()));
    Ok(true)
}
