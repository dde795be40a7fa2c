//! The acceptance battery: every headline claim about the constructed
//! graphs, checked exactly, with one result per criterion.
//!
//! The girth oracle used in criterion 8 is deliberately independent of the
//! BFS kernel in [`crate::graph`]: it deletes each edge in turn and measures
//! the shortest path between its endpoints, which is the shortest cycle
//! through that edge.

use std::time::{Duration, Instant};

use crate::cage::{
    build_bq, build_gamma, build_hq, build_staged, check_dual_equivalence, check_isomorphism, Stage,
};
use crate::dominating::{
    build_pds, check_matching, common_second_neighborhood, p_poly, remove_pds, seed_sets,
};
use crate::error::Result;
use crate::field::Field;
use crate::formats::{parse_graph, serialize_graph, GraphFormat};
use crate::graph::{moore_bound, BipartiteGraph, VertexSet, UNREACHED};
use crate::label::{Label, Side};
use crate::rng::SplitMix64;

const CAGE_QS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];
const BQ_HQ_QS: [u64; 6] = [3, 4, 5, 7, 8, 9];
const STAGE_QS: [u64; 4] = [2, 3, 4, 5];
const DISTANCE_EXHAUSTIVE_QS: [u64; 4] = [2, 3, 4, 5];
const DISTANCE_SAMPLED_QS: [u64; 3] = [7, 8, 9];
const PDS_QS: [u64; 3] = [4, 8, 16];
const SAMPLED_PAIRS: usize = 500;

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    /// Upper bound applied to every per-criterion q list.
    pub q_max: u64,
    /// Skip the diameter check for q >= 11.
    pub quick: bool,
    pub threads: usize,
}

impl Default for SelftestConfig {
    fn default() -> SelftestConfig {
        SelftestConfig {
            q_max: 9,
            quick: false,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub pass: bool,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn summary_line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {} [{}] {} ({:.2}s)",
            self.index,
            self.name,
            status,
            self.elapsed.as_secs_f64()
        );
        for f in &self.failures {
            line.push_str(&format!("\n    - {f}"));
        }
        line
    }
}

struct Checker {
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Checker {
        Checker {
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn note_err(&mut self, context: &str, e: &crate::error::Error) {
        self.failures.push(format!("{context}: {e}"));
    }
}

fn finish(index: usize, name: &'static str, checker: Checker, started: Instant) -> CriterionResult {
    CriterionResult {
        index,
        name,
        pass: checker.failures.is_empty(),
        failures: checker.failures,
        elapsed: started.elapsed(),
    }
}

fn qs(list: &[u64], cfg: &SelftestConfig) -> Vec<u64> {
    list.iter().copied().filter(|&q| q <= cfg.q_max).collect()
}

/// Criterion 1: each Gamma_q attains the Moore bound, is (q+1)-regular,
/// bipartite, of girth exactly 8 and diameter exactly 4.
pub fn criterion_moore_cages(cfg: &SelftestConfig) -> CriterionResult {
    let started = Instant::now();
    let mut c = Checker::new();
    for q in qs(&CAGE_QS, cfg) {
        match build_gamma(q) {
            Ok(g) => {
                let expected = 2 * (q * q * q + q * q + q + 1);
                let bound = moore_bound(q + 1).unwrap();
                c.check(expected == bound, || {
                    format!("q={q}: closed form {expected} != moore bound {bound}")
                });
                c.check(g.order() as u64 == bound, || {
                    format!("q={q}: order {} != {bound}", g.order())
                });
                c.check(g.is_regular(q as u32 + 1), || {
                    format!("q={q}: not {}-regular", q + 1)
                });
                c.check(g.is_bipartite_consistent(), || {
                    format!("q={q}: bipartition broken")
                });
                let girth = g.girth_with_threads(cfg.threads);
                c.check(girth == Some(8), || format!("q={q}: girth {girth:?} != 8"));
                if !(cfg.quick && q >= 11) {
                    let diameter = g.diameter_with_threads(cfg.threads);
                    c.check(diameter == Some(4), || {
                        format!("q={q}: diameter {diameter:?} != 4")
                    });
                }
            }
            Err(e) => c.note_err(&format!("build_gamma({q})"), &e),
        }
    }
    finish(1, "moore-cages", c, started)
}

/// Criterion 2: the side-1 and side-0 rule sets generate the same edges.
pub fn criterion_dual_equivalence(cfg: &SelftestConfig) -> CriterionResult {
    let started = Instant::now();
    let mut c = Checker::new();
    for q in qs(&CAGE_QS, cfg) {
        if let Err(e) = check_dual_equivalence(q) {
            c.note_err(&format!("q={q}"), &e);
        }
    }
    finish(2, "dual-equivalence", c, started)
}

/// Criterion 3: B_q and H_q have order 2q^3, are q-regular of girth 8, and
/// sigma is an isomorphism between them.
pub fn criterion_bq_hq(cfg: &SelftestConfig) -> CriterionResult {
    let started = Instant::now();
    let mut c = Checker::new();
    for q in qs(&BQ_HQ_QS, cfg) {
        for (name, built) in [("B", build_bq(q)), ("H", build_hq(q))] {
            match built {
                Ok(g) => {
                    c.check(g.order() as u64 == 2 * q * q * q, || {
                        format!("{name}_{q}: order {}", g.order())
                    });
                    c.check(g.is_regular(q as u32), || {
                        format!("{name}_{q}: not {q}-regular")
                    });
                    let girth = g.girth_with_threads(cfg.threads);
                    c.check(girth == Some(8), || {
                        format!("{name}_{q}: girth {girth:?} != 8")
                    });
                }
                Err(e) => c.note_err(&format!("{name}_{q}"), &e),
            }
        }
        match check_isomorphism(q) {
            Ok(ok) => c.check(ok, || format!("sigma is not an isomorphism at q={q}")),
            Err(e) => c.note_err(&format!("check_isomorphism({q})"), &e),
        }
    }
    finish(3, "bq-hq-isomorphism", c, started)
}

/// Criterion 4: the staged graphs have the stated orders, degree splits and
/// girth 8.
pub fn criterion_stages(cfg: &SelftestConfig) -> CriterionResult {
    let started = Instant::now();
    let mut c = Checker::new();
    for q in qs(&STAGE_QS, cfg) {
        let gamma = match build_gamma(q) {
            Ok(g) => g,
            Err(e) => {
                c.note_err(&format!("build_gamma({q})"), &e);
                continue;
            }
        };
        for stage in [Stage::BqPrime, Stage::BqDoublePrime, Stage::BqTriplePrime] {
            let g = crate::cage::induce_stage(&gamma, stage);
            c.check(g.order() as u64 == stage.order(q), || {
                format!(
                    "{} at q={q}: order {} != {}",
                    stage.name(),
                    g.order(),
                    stage.order(q)
                )
            });
            let girth = g.girth_with_threads(cfg.threads);
            c.check(girth == Some(8), || {
                format!("{} at q={q}: girth {girth:?} != 8", stage.name())
            });
            // Degree split per the staged augmentation.
            let mut split_ok = true;
            for v in 0..g.order() as u32 {
                let label = g.label_of(v).expect("staged graphs stay labelled");
                let is_older = match stage {
                    Stage::BqPrime => label.side == Side::Zero,
                    Stage::BqDoublePrime => !(label.side == Side::Zero && !label.is_point()),
                    Stage::BqTriplePrime => {
                        !(label.side == Side::One && !label.is_point() && label.b.is_rho())
                    }
                    _ => unreachable!(),
                };
                let expected = if is_older { q as u32 + 1 } else { q as u32 };
                if g.degree(v) != expected {
                    split_ok = false;
                    c.check(false, || {
                        format!(
                            "{} at q={q}: {} has degree {} (expected {expected})",
                            stage.name(),
                            label,
                            g.degree(v)
                        )
                    });
                    break;
                }
            }
            let _ = split_ok;
        }
    }
    finish(4, "stage-ledger", c, started)
}

fn pairwise_distance_at_least(
    g: &BipartiteGraph,
    members: &[u32],
    bound: u32,
    c: &mut Checker,
    what: &str,
) {
    for (i, &u) in members.iter().enumerate() {
        let dist = g.bfs_distances(u);
        for &v in &members[i + 1..] {
            let d = dist[v as usize];
            c.check(d >= bound || d == UNREACHED, || {
                format!(
                    "{what}: {} and {} at distance {d} < {bound}",
                    g.describe_vertex(u),
                    g.describe_vertex(v)
                )
            });
        }
    }
}

fn first_coord_family_side1(g: &BipartiteGraph, field: &Field, a: crate::field::FieldElem) -> Vec<u32> {
    let mut out = Vec::new();
    for b in field.elements() {
        for cc in field.elements() {
            if let Some(v) = g.vertex_of(&Label::point(Side::One, a, b, cc)) {
                out.push(v);
            }
        }
    }
    out
}

fn first_coord_family_side0(g: &BipartiteGraph, field: &Field, i: crate::field::FieldElem) -> Vec<u32> {
    let mut out = Vec::new();
    for j in field.elements() {
        for k in field.elements() {
            if let Some(v) = g.vertex_of(&Label::point(Side::Zero, i, j, k)) {
                out.push(v);
            }
        }
    }
    out
}

/// Criterion 5: distance separation inside coordinate families: pairwise
/// at least 4 for same-first-coordinate families and at least 6 for the
/// three finer families, exhaustively for small q, sampled for larger q.
pub fn criterion_distance_claims(cfg: &SelftestConfig) -> CriterionResult {
    let started = Instant::now();
    let mut c = Checker::new();

    for q in qs(&DISTANCE_EXHAUSTIVE_QS, cfg) {
        let field = Field::new(q).unwrap();
        let bq = build_bq(q).unwrap();
        let bp = build_staged(q, Stage::BqPrime).unwrap();
        let bpp = build_staged(q, Stage::BqDoublePrime).unwrap();

        for a in field.elements() {
            pairwise_distance_at_least(
                &bq,
                &first_coord_family_side1(&bq, &field, a),
                4,
                &mut c,
                &format!("B_{q} side-1 family a={a}"),
            );
            pairwise_distance_at_least(
                &bq,
                &first_coord_family_side0(&bq, &field, a),
                4,
                &mut c,
                &format!("B_{q} side-0 family i={a}"),
            );
        }
        // {(x,y,j)_0 : j} pairwise >= 6 in B_q.
        for x in field.elements() {
            for y in field.elements() {
                let family: Vec<u32> = field
                    .elements()
                    .filter_map(|j| bq.vertex_of(&Label::point(Side::Zero, x, y, j)))
                    .collect();
                pairwise_distance_at_least(
                    &bq,
                    &family,
                    6,
                    &mut c,
                    &format!("B_{q} column x={x},y={y}"),
                );
            }
        }
        // {(a,t,c)_1 : t} pairwise >= 6 in B'_q, a in F_q u {rho}.
        for cc in field.elements() {
            for a_label in field
                .elements()
                .map(|a| {
                    field
                        .elements()
                        .map(|t| Label::point(Side::One, a, t, cc))
                        .collect::<Vec<_>>()
                })
                .chain(std::iter::once(
                    field
                        .elements()
                        .map(|t| Label::rho_bc(Side::One, t, cc))
                        .collect::<Vec<_>>(),
                ))
            {
                let family: Vec<u32> = a_label.iter().filter_map(|l| bp.vertex_of(l)).collect();
                pairwise_distance_at_least(&bp, &family, 6, &mut c, &format!("B'_{q} row c={cc}"));
            }
        }
        // {(rho,a,j)_0 : j} pairwise >= 6 in B''_q, a in F_q u {rho}.
        let mut b_families: Vec<Vec<Label>> = field
            .elements()
            .map(|a| {
                field
                    .elements()
                    .map(|j| Label::rho_bc(Side::Zero, a, j))
                    .collect()
            })
            .collect();
        b_families.push(
            field
                .elements()
                .map(|j| Label::rho_rho_c(Side::Zero, j))
                .collect(),
        );
        for labels in b_families {
            let family: Vec<u32> = labels.iter().filter_map(|l| bpp.vertex_of(l)).collect();
            pairwise_distance_at_least(&bpp, &family, 6, &mut c, &format!("B''_{q} rho row"));
        }
    }

    // Larger q: sampled pairs, deterministic seed per q.
    for q in qs(&DISTANCE_SAMPLED_QS, cfg) {
        let field = Field::new(q).unwrap();
        let bq = build_bq(q).unwrap();
        let bp = build_staged(q, Stage::BqPrime).unwrap();
        let bpp = build_staged(q, Stage::BqDoublePrime).unwrap();
        let mut rng = SplitMix64::new(0xCA6E << 16 | q);
        let elems: Vec<_> = field.elements().collect();
        let pick = |rng: &mut SplitMix64, n: usize| rng.below(n as u64) as usize;

        let check_distance =
            |g: &BipartiteGraph, u: u32, v: u32, bound: u32, what: &str, c: &mut Checker| {
                if u == v {
                    return;
                }
                let d = g.distance(u, v).unwrap();
                c.check(d.is_none_or(|d| d >= bound), || {
                    format!(
                        "{what} at q={q}: {} and {} at distance {d:?} < {bound}",
                        g.describe_vertex(u),
                        g.describe_vertex(v)
                    )
                });
            };

        for _ in 0..SAMPLED_PAIRS {
            // Same-first-coordinate families, both sides.
            let a = elems[pick(&mut rng, elems.len())];
            let (b1, c1) = (
                elems[pick(&mut rng, elems.len())],
                elems[pick(&mut rng, elems.len())],
            );
            let (b2, c2) = (
                elems[pick(&mut rng, elems.len())],
                elems[pick(&mut rng, elems.len())],
            );
            let u = bq.vertex_of(&Label::point(Side::One, a, b1, c1)).unwrap();
            let v = bq.vertex_of(&Label::point(Side::One, a, b2, c2)).unwrap();
            check_distance(&bq, u, v, 4, "first-coordinate family side-1", &mut c);
            let u = bq.vertex_of(&Label::point(Side::Zero, a, b1, c1)).unwrap();
            let v = bq.vertex_of(&Label::point(Side::Zero, a, b2, c2)).unwrap();
            check_distance(&bq, u, v, 4, "first-coordinate family side-0", &mut c);

            // Column families {(x,y,j)_0} in B_q.
            let (x, y) = (
                elems[pick(&mut rng, elems.len())],
                elems[pick(&mut rng, elems.len())],
            );
            let j1 = elems[pick(&mut rng, elems.len())];
            let j2 = elems[pick(&mut rng, elems.len())];
            let u = bq.vertex_of(&Label::point(Side::Zero, x, y, j1)).unwrap();
            let v = bq.vertex_of(&Label::point(Side::Zero, x, y, j2)).unwrap();
            check_distance(&bq, u, v, 6, "column family", &mut c);

            // {(a,t,c)_1} in B'_q with a in F_q u {rho}.
            let cc = elems[pick(&mut rng, elems.len())];
            let t1 = elems[pick(&mut rng, elems.len())];
            let t2 = elems[pick(&mut rng, elems.len())];
            let use_rho = rng.chance(1, (elems.len() + 1) as u64);
            let (u, v) = if use_rho {
                (
                    bp.vertex_of(&Label::rho_bc(Side::One, t1, cc)).unwrap(),
                    bp.vertex_of(&Label::rho_bc(Side::One, t2, cc)).unwrap(),
                )
            } else {
                let a = elems[pick(&mut rng, elems.len())];
                (
                    bp.vertex_of(&Label::point(Side::One, a, t1, cc)).unwrap(),
                    bp.vertex_of(&Label::point(Side::One, a, t2, cc)).unwrap(),
                )
            };
            check_distance(&bp, u, v, 6, "middle-row family", &mut c);

            // {(rho,a,j)_0} in B''_q with a in F_q u {rho}.
            let j1 = elems[pick(&mut rng, elems.len())];
            let j2 = elems[pick(&mut rng, elems.len())];
            let use_rho = rng.chance(1, (elems.len() + 1) as u64);
            let (u, v) = if use_rho {
                (
                    bpp.vertex_of(&Label::rho_rho_c(Side::Zero, j1)).unwrap(),
                    bpp.vertex_of(&Label::rho_rho_c(Side::Zero, j2)).unwrap(),
                )
            } else {
                let a = elems[pick(&mut rng, elems.len())];
                (
                    bpp.vertex_of(&Label::rho_bc(Side::Zero, a, j1)).unwrap(),
                    bpp.vertex_of(&Label::rho_bc(Side::Zero, a, j2)).unwrap(),
                )
            };
            check_distance(&bpp, u, v, 6, "rho-row family", &mut c);
        }
    }
    finish(5, "distance-claims", c, started)
}

/// Criterion 6: the perfect dominating sets exist with the stated
/// cardinalities, closed-form second neighbourhoods, induced shape and
/// matching.
pub fn criterion_pds(cfg: &SelftestConfig) -> CriterionResult {
    let started = Instant::now();
    let mut c = Checker::new();
    for q in qs(&PDS_QS, cfg) {
        match build_pds(q) {
            Ok(cert) => {
                let expected = if q == 4 { 70 } else { 2 * (q * q + 4 * q + 3) };
                c.check(cert.perfect, || format!("q={q}: set is not perfect"));
                c.check(cert.cardinality == expected, || {
                    format!("q={q}: cardinality {} != {expected}", cert.cardinality)
                });
                if q == 4 {
                    match &cert.alternate {
                        Some(alt) => {
                            c.check(alt.perfect && alt.cardinality == 70, || {
                                "q=4: alternate x-choice not perfect of size 70".into()
                            });
                        }
                        None => c.check(false, || "q=4: missing alternate x-choice".into()),
                    }
                } else {
                    let degrees: Vec<u32> = cert.induced_degrees.keys().copied().collect();
                    c.check(degrees.iter().all(|&d| d == 3 || d == q as u32 + 1), || {
                        format!("q={q}: induced degrees {degrees:?} not in {{3,{}}}", q + 1)
                    });
                    c.check(cert.induced_diameter == Some(5), || {
                        format!("q={q}: induced diameter {:?} != 5", cert.induced_diameter)
                    });
                }
            }
            Err(e) => c.note_err(&format!("build_pds({q})"), &e),
        }
        if q >= 8 {
            // Closed forms for I_Q and I_S.
            let field = Field::new(q).unwrap();
            let gamma = build_gamma(q).unwrap();
            match seed_sets(&field) {
                Ok(seeds) => {
                    let to_set = |labels: &[Label]| -> VertexSet {
                        labels
                            .iter()
                            .map(|l| gamma.vertex_of(l).expect("seed labels exist"))
                            .collect()
                    };
                    let iq = common_second_neighborhood(&gamma, &to_set(&seeds.q_labels)).unwrap();
                    let mut iq_expect: Vec<Label> = field
                        .elements()
                        .map(|t| Label::point(Side::Zero, field.zero(), t, field.zero()))
                        .collect();
                    iq_expect.push(Label::rho_rho_rho(Side::Zero));
                    c.check(iq == to_set(&iq_expect), || {
                        format!("q={q}: I_Q differs from its closed form")
                    });
                    let is_ = common_second_neighborhood(&gamma, &to_set(&seeds.s_labels)).unwrap();
                    let mut is_expect: Vec<Label> = field
                        .elements()
                        .map(|u| {
                            Label::point(Side::One, u, field.add(field.one(), u), p_poly(&field, u))
                        })
                        .collect();
                    is_expect.push(Label::rho_bc(Side::One, field.zero(), field.one()));
                    c.check(is_ == to_set(&is_expect), || {
                        format!("q={q}: I_S differs from its closed form")
                    });
                }
                Err(e) => c.note_err(&format!("seed_sets({q})"), &e),
            }
            match check_matching(q) {
                Ok(ok) => c.check(ok, || format!("q={q}: matching verification failed")),
                Err(e) => c.note_err(&format!("check_matching({q})"), &e),
            }
        }
    }
    finish(6, "perfect-dominating-set", c, started)
}

/// Criterion 7: removing the dominating set leaves a q-regular girth-8
/// graph of order 2(q^3 - 3q - 2).
pub fn criterion_removal(cfg: &SelftestConfig) -> CriterionResult {
    let started = Instant::now();
    let mut c = Checker::new();
    for q in qs(&PDS_QS, cfg) {
        match remove_pds(q) {
            Ok(g) => {
                let expected = 2 * (q * q * q - 3 * q - 2);
                c.check(g.order() as u64 == expected, || {
                    format!("q={q}: order {} != {expected}", g.order())
                });
                c.check(g.is_regular(q as u32), || {
                    format!("q={q}: residual graph is not {q}-regular")
                });
                let girth = g.girth_with_threads(cfg.threads);
                c.check(girth == Some(8), || {
                    format!("q={q}: residual girth {girth:?} != 8")
                });
            }
            Err(e) => c.note_err(&format!("remove_pds({q})"), &e),
        }
    }
    finish(7, "pds-removal", c, started)
}

/// Brute-force girth oracle: min over edges (u,v) of (shortest u-v path
/// avoiding that edge) + 1. Independent of the BFS-from-every-root kernel.
pub fn oracle_girth(g: &BipartiteGraph) -> Option<u32> {
    let n = g.order();
    let mut best: Option<u32> = None;
    let mut dist = vec![UNREACHED; n];
    let mut queue = Vec::with_capacity(n);
    for (u, v) in g.edges() {
        dist.fill(UNREACHED);
        queue.clear();
        dist[u as usize] = 0;
        queue.push(u);
        let mut head = 0;
        'bfs: while head < queue.len() {
            let x = queue[head];
            head += 1;
            let dx = dist[x as usize];
            if let Some(b) = best {
                if dx + 1 >= b {
                    break;
                }
            }
            for &w in g.neighbors(x) {
                if x == u && w == v {
                    continue; // the deleted edge
                }
                if dist[w as usize] == UNREACHED {
                    dist[w as usize] = dx + 1;
                    if w == v {
                        let cycle = dx + 2;
                        best = Some(best.map_or(cycle, |b| b.min(cycle)));
                        break 'bfs;
                    }
                    queue.push(w);
                }
            }
        }
    }
    best
}

/// Deterministic random bipartite graph on at most `max_order` vertices.
pub fn random_bipartite(rng: &mut SplitMix64, max_order: usize) -> BipartiteGraph {
    let n1 = 2 + rng.below((max_order / 2 - 2) as u64) as usize;
    let n2 = 2 + rng.below((max_order / 2 - 2) as u64) as usize;
    let percent = [2u64, 5, 10, 30][rng.below(4) as usize];
    let mut edges = Vec::new();
    for u in 0..n1 as u32 {
        for v in 0..n2 as u32 {
            if rng.chance(percent, 100) {
                edges.push((u, n1 as u32 + v));
            }
        }
    }
    let mut sides = vec![0u8; n1 + n2];
    for s in sides.iter_mut().skip(n1) {
        *s = 1;
    }
    BipartiteGraph::from_edges(n1 + n2, &edges, Some(sides), None).unwrap()
}

/// Criterion 8: the girth kernel agrees with the independent oracle on 50
/// random bipartite graphs, and a corrupted cage is caught by at least one
/// of the girth / regularity / bipartiteness checks.
pub fn criterion_verifier_soundness(cfg: &SelftestConfig) -> CriterionResult {
    let started = Instant::now();
    let mut c = Checker::new();
    let mut rng = SplitMix64::new(0x0CA6_EC17);
    for i in 0..50 {
        let g = random_bipartite(&mut rng, 200);
        let kernel = g.girth_with_threads(cfg.threads);
        let oracle = oracle_girth(&g);
        c.check(kernel == oracle, || {
            format!(
                "random graph {i} (order {}): kernel {kernel:?} != oracle {oracle:?}",
                g.order()
            )
        });
    }

    // Single-edge corruptions of Gamma_5.
    let gamma = build_gamma(5).unwrap();
    let sides = gamma.sides().unwrap().to_vec();
    let edges: Vec<(u32, u32)> = gamma.edges().collect();
    let detects = |g: &BipartiteGraph| -> bool {
        g.girth() != Some(8) || !g.is_regular(6) || !g.is_bipartite_consistent()
    };

    // Removing an edge breaks regularity.
    let mut removed = edges.clone();
    removed.remove(17);
    let g = BipartiteGraph::from_edges(gamma.order(), &removed, Some(sides.clone()), None).unwrap();
    c.check(detects(&g), || "edge removal went undetected".into());

    // Adding an intra-side edge breaks the bipartition (and usually girth).
    let mut added = edges.clone();
    added.push((0, 1));
    let g = BipartiteGraph::from_edges(gamma.order(), &added, Some(sides.clone()), None).unwrap();
    c.check(detects(&g), || "intra-side edge went undetected".into());
    c.check(!g.is_bipartite_consistent(), || {
        "intra-side edge kept the bipartition consistent".into()
    });

    // Rewiring one endpoint breaks regularity (and usually girth).
    let mut rewired = edges;
    let (u, v) = rewired[42];
    let replacement = (
        u,
        (v + 1 - gamma.order() as u32 / 2) % (gamma.order() as u32 / 2) + gamma.order() as u32 / 2,
    );
    rewired[42] = if replacement.1 == v || gamma.has_edge(replacement.0, replacement.1) {
        (u, v) // fall back, handled below
    } else {
        replacement
    };
    if rewired[42] != (u, v) {
        let g = BipartiteGraph::from_edges(gamma.order(), &rewired, Some(sides), None).unwrap();
        c.check(detects(&g), || "edge rewiring went undetected".into());
    }
    finish(8, "verifier-soundness", c, started)
}

/// Criterion 9: every format round-trips Gamma_3 and the q=4 residual graph
/// with byte-identical re-serialization.
pub fn criterion_io_roundtrip(_cfg: &SelftestConfig) -> CriterionResult {
    let started = Instant::now();
    let mut c = Checker::new();
    let subjects: Vec<(&str, Result<BipartiteGraph>)> =
        vec![("gamma_3", build_gamma(3)), ("residual_4", remove_pds(4))];
    for (name, graph) in subjects {
        match graph {
            Ok(g) => {
                for fmt in GraphFormat::ALL {
                    let bytes = match serialize_graph(&g, fmt) {
                        Ok(b) => b,
                        Err(e) => {
                            c.note_err(&format!("{name} serialize {}", fmt.name()), &e);
                            continue;
                        }
                    };
                    match parse_graph(&bytes, fmt) {
                        Ok(parsed) => {
                            c.check(parsed.same_adjacency(&g), || {
                                format!("{name}: {} round-trip changed adjacency", fmt.name())
                            });
                            match serialize_graph(&parsed, fmt) {
                                Ok(again) => c.check(again == bytes, || {
                                    format!("{name}: {} not byte-identical", fmt.name())
                                }),
                                Err(e) => {
                                    c.note_err(&format!("{name} re-serialize {}", fmt.name()), &e)
                                }
                            }
                        }
                        Err(e) => c.note_err(&format!("{name} parse {}", fmt.name()), &e),
                    }
                }
            }
            Err(e) => c.note_err(name, &e),
        }
    }
    finish(9, "io-roundtrip", c, started)
}

/// Runs the whole battery in order.
pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionResult> {
    vec![
        criterion_moore_cages(cfg),
        criterion_dual_equivalence(cfg),
        criterion_bq_hq(cfg),
        criterion_stages(cfg),
        criterion_distance_claims(cfg),
        criterion_pds(cfg),
        criterion_removal(cfg),
        criterion_verifier_soundness(cfg),
        criterion_io_roundtrip(cfg),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_agrees_on_known_graphs() {
        let cycle6: Vec<(u32, u32)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = BipartiteGraph::from_edges(6, &cycle6, None, None).unwrap();
        assert_eq!(oracle_girth(&g), Some(6));
        let tree = BipartiteGraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)], None, None).unwrap();
        assert_eq!(oracle_girth(&tree), None);
        let gamma2 = build_gamma(2).unwrap();
        assert_eq!(oracle_girth(&gamma2), Some(8));
    }

    #[test]
    fn kernel_matches_oracle_on_random_graphs() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..20 {
            let g = random_bipartite(&mut rng, 120);
            assert_eq!(g.girth(), oracle_girth(&g), "order {}", g.order());
        }
    }

    #[test]
    fn quick_battery_passes_at_small_q() {
        let cfg = SelftestConfig {
            q_max: 4,
            quick: false,
            threads: 2,
        };
        for result in run_all(&cfg) {
            assert!(result.pass, "{}", result.summary_line());
        }
    }
}
