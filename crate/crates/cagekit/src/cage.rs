//! Coordinate builders for the girth-8 graphs over GF(q): the Moore cage
//! Gamma_q, the 2q^3-vertex graphs B_q and H_q, the staged augmentations
//! between them, and the explicit isomorphism sigma: B_q -> H_q.
//!
//! Gamma_q is materialized from the side-1 neighbour rules; the side-0 rules
//! exist as an independent builder so the two formulations can be checked
//! against each other edge for edge.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::graph::{BipartiteGraph, Labeling, VertexSet};
use crate::label::{Coord, Label, LabelCodec, Shape, Side};

/// The nested construction stages between B_q and Gamma_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Both sides F_q^3.
    Bq,
    /// B_q plus the q^2 side-1 vertices (rho,b,c).
    BqPrime,
    /// B'_q plus the q^2+q side-0 vertices (rho,b,c) and (rho,rho,c).
    BqDoublePrime,
    /// B''_q plus the q+1 side-1 vertices (rho,rho,c) and (rho,rho,rho).
    BqTriplePrime,
    /// The full cage: B'''_q plus (rho,rho,rho)_0.
    Gamma,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Bq,
        Stage::BqPrime,
        Stage::BqDoublePrime,
        Stage::BqTriplePrime,
        Stage::Gamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Bq => "bq",
            Stage::BqPrime => "bq-prime",
            Stage::BqDoublePrime => "bq-double-prime",
            Stage::BqTriplePrime => "bq-triple-prime",
            Stage::Gamma => "gamma",
        }
    }

    pub fn from_name(name: &str) -> Result<Stage> {
        Stage::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::Construction(format!("unknown stage '{name}'")))
    }

    /// Expected vertex count at this stage.
    pub fn order(self, q: u64) -> u64 {
        match self {
            Stage::Bq => 2 * q * q * q,
            Stage::BqPrime => 2 * q * q * q + q * q,
            Stage::BqDoublePrime => 2 * q * q * q + 2 * q * q + q,
            Stage::BqTriplePrime => 2 * q * q * q + 2 * q * q + 2 * q + 1,
            Stage::Gamma => 2 * (q * q * q + q * q + q + 1),
        }
    }

    /// Whether a label survives into this stage of the construction.
    pub fn contains(self, label: &Label) -> bool {
        let shape = label.shape();
        match self {
            Stage::Bq => shape == Shape::Point,
            Stage::BqPrime => {
                shape == Shape::Point || (label.side == Side::One && shape == Shape::RhoBC)
            }
            Stage::BqDoublePrime => {
                Stage::BqPrime.contains(label)
                    || (label.side == Side::Zero && matches!(shape, Shape::RhoBC | Shape::RhoRhoC))
            }
            Stage::BqTriplePrime => {
                Stage::BqDoublePrime.contains(label)
                    || (label.side == Side::One
                        && matches!(shape, Shape::RhoRhoC | Shape::RhoRhoRho))
            }
            Stage::Gamma => true,
        }
    }
}

/// Neighbour rule for Gamma_q. Side-1 labels use the primary rule block,
/// side-0 labels the mirrored one. Either way the result is the full list
/// of q+1 neighbours on the other side.
pub fn gamma_neighbors(field: &Field, label: &Label) -> Vec<Label> {
    let other = label.side.other();
    let mut out = Vec::with_capacity(field.q() as usize + 1);
    match label.side {
        Side::One => match (label.a, label.b, label.c) {
            (Coord::Elem(a), Coord::Elem(b), Coord::Elem(c)) => {
                // (w, aw+b, a^2*w + 2ab + c) for w in F_q, plus (rho, a, c).
                let a2 = field.mul(a, a);
                let two_ab = field.double(field.mul(a, b));
                for w in field.elements() {
                    let y = field.add(field.mul(a, w), b);
                    let z = field.add(field.add(field.mul(a2, w), two_ab), c);
                    out.push(Label::point(other, w, y, z));
                }
                out.push(Label::rho_bc(other, a, c));
            }
            (Coord::Rho, Coord::Elem(b), Coord::Elem(c)) => {
                // (c, b, w) for w in F_q, plus (rho, rho, c).
                for w in field.elements() {
                    out.push(Label::point(other, c, b, w));
                }
                out.push(Label::rho_rho_c(other, c));
            }
            (Coord::Rho, Coord::Rho, Coord::Elem(c)) => {
                // (rho, c, w) for w in F_q, plus (rho, rho, rho).
                for w in field.elements() {
                    out.push(Label::rho_bc(other, c, w));
                }
                out.push(Label::rho_rho_rho(other));
            }
            _ => {
                // (rho, rho, w) for w in F_q, plus (rho, rho, rho).
                for w in field.elements() {
                    out.push(Label::rho_rho_c(other, w));
                }
                out.push(Label::rho_rho_rho(other));
            }
        },
        Side::Zero => match (label.a, label.b, label.c) {
            (Coord::Elem(i), Coord::Elem(j), Coord::Elem(k)) => {
                // (w, j - wi, w^2*i - 2wj + k) for w in F_q, plus (rho, j, i).
                for w in field.elements() {
                    let y = field.sub(j, field.mul(w, i));
                    let w2i = field.mul(field.mul(w, w), i);
                    let z = field.add(field.sub(w2i, field.double(field.mul(w, j))), k);
                    out.push(Label::point(other, w, y, z));
                }
                out.push(Label::rho_bc(other, j, i));
            }
            (Coord::Rho, Coord::Elem(j), Coord::Elem(k)) => {
                // (j, w, k) for w in F_q, plus (rho, rho, j).
                for w in field.elements() {
                    out.push(Label::point(other, j, w, k));
                }
                out.push(Label::rho_rho_c(other, j));
            }
            (Coord::Rho, Coord::Rho, Coord::Elem(k)) => {
                // (rho, w, k) for w in F_q, plus (rho, rho, rho).
                for w in field.elements() {
                    out.push(Label::rho_bc(other, w, k));
                }
                out.push(Label::rho_rho_rho(other));
            }
            _ => {
                // (rho, rho, w) for w in F_q, plus (rho, rho, rho).
                for w in field.elements() {
                    out.push(Label::rho_rho_c(other, w));
                }
                out.push(Label::rho_rho_rho(other));
            }
        },
    }
    out
}

fn check_order_fits(codec: &LabelCodec) -> Result<()> {
    let q = codec.q() as u64;
    let stride = (q * q * q) + (q * q) + q + 1;
    if 2 * stride > u32::MAX as u64 {
        return Err(Error::Construction(format!(
            "q = {q} produces too many vertices to index"
        )));
    }
    Ok(())
}

fn build_from_rules(q: u64, source_side: Side) -> Result<BipartiteGraph> {
    let field = Field::new(q)?;
    let codec = LabelCodec::new(field.q());
    check_order_fits(&codec)?;
    let stride = codec.stride();
    let order = codec.order() as usize;
    let mut edges = Vec::with_capacity(stride as usize * (field.q() as usize + 1));
    let base = source_side.index() as u32 * stride;
    for idx in base..base + stride {
        let label = codec.decode(idx);
        let neigh = gamma_neighbors(&field, &label);
        let mut codes: Vec<u32> = neigh.iter().map(|l| codec.encode(l)).collect();
        codes.sort_unstable();
        if codes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Construction(format!(
                "duplicate neighbour generated at {label}"
            )));
        }
        for code in codes {
            // Normalize to (side-0 index, side-1 index).
            let (u, v) = if source_side == Side::One {
                (code, idx)
            } else {
                (idx, code)
            };
            edges.push((u, v));
        }
    }
    let sides: Vec<u8> = (0..order as u32)
        .map(|v| if v < stride { 0 } else { 1 })
        .collect();
    BipartiteGraph::from_edges(order, &edges, Some(sides), Some(Labeling::full(codec)))
}

/// The Moore cage Gamma_q on 2(q^3+q^2+q+1) vertices, generated from the
/// side-1 rule set.
pub fn build_gamma(q: u64) -> Result<BipartiteGraph> {
    build_from_rules(q, Side::One)
}

/// Gamma_q generated from the mirrored side-0 rule set. Used as an
/// independent cross-check of [`build_gamma`].
pub fn build_gamma_dual(q: u64) -> Result<BipartiteGraph> {
    build_from_rules(q, Side::Zero)
}

/// Verifies that both rule sets generate the same edge set; reports the
/// first disagreeing vertex on failure.
pub fn check_dual_equivalence(q: u64) -> Result<()> {
    let g = build_gamma(q)?;
    let d = build_gamma_dual(q)?;
    if g.same_adjacency(&d) {
        return Ok(());
    }
    for v in 0..g.order() as u32 {
        if g.neighbors(v) != d.neighbors(v) {
            return Err(Error::FormulationMismatch {
                q: q as u32,
                detail: format!(
                    "vertex {} has neighbours {:?} vs {:?}",
                    g.describe_vertex(v),
                    g.neighbors(v),
                    d.neighbors(v)
                ),
            });
        }
    }
    unreachable!("adjacency mismatch without a differing vertex")
}

fn point_index(q: u32, side: Side, a: FieldElem, b: FieldElem, c: FieldElem) -> u32 {
    let within = a.value() * q * q + b.value() * q + c.value();
    side.index() as u32 * q * q * q + within
}

fn point_labeling(codec: LabelCodec) -> Labeling {
    let q = codec.q();
    let stride = codec.stride();
    let mut indices = Vec::with_capacity(2 * (q * q * q) as usize);
    indices.extend(0..q * q * q);
    indices.extend(stride..stride + q * q * q);
    Labeling::new(codec, indices).expect("point indices are increasing")
}

fn point_sides(q: u32) -> Vec<u8> {
    let cube = (q * q * q) as usize;
    let mut sides = vec![0u8; 2 * cube];
    for s in sides.iter_mut().skip(cube) {
        *s = 1;
    }
    sides
}

/// B_q: both sides F_q^3, with (a,b,c)_1 adjacent to
/// (j, aj+b, a^2*j + 2ab + c)_0 for every j.
pub fn build_bq(q: u64) -> Result<BipartiteGraph> {
    let field = Field::new(q)?;
    let fq = field.q();
    let codec = LabelCodec::new(fq);
    check_order_fits(&codec)?;
    let cube = fq * fq * fq;
    let mut edges = Vec::with_capacity((cube * fq) as usize);
    for a in field.elements() {
        let a2 = field.mul(a, a);
        for b in field.elements() {
            let two_ab = field.double(field.mul(a, b));
            for c in field.elements() {
                let v1 = cube + point_index(fq, Side::Zero, a, b, c);
                for j in field.elements() {
                    let y = field.add(field.mul(a, j), b);
                    let z = field.add(field.add(field.mul(a2, j), two_ab), c);
                    edges.push((point_index(fq, Side::Zero, j, y, z), v1));
                }
            }
        }
    }
    BipartiteGraph::from_edges(
        2 * cube as usize,
        &edges,
        Some(point_sides(fq)),
        Some(point_labeling(codec)),
    )
}

/// H_q: both sides F_q^3, with (a,b,c)_1 adjacent to
/// (w, aw+b, a^2*w + c)_0 for every w.
pub fn build_hq(q: u64) -> Result<BipartiteGraph> {
    let field = Field::new(q)?;
    let fq = field.q();
    let codec = LabelCodec::new(fq);
    check_order_fits(&codec)?;
    let cube = fq * fq * fq;
    let mut edges = Vec::with_capacity((cube * fq) as usize);
    for a in field.elements() {
        let a2 = field.mul(a, a);
        for b in field.elements() {
            for c in field.elements() {
                let v1 = cube + point_index(fq, Side::Zero, a, b, c);
                for w in field.elements() {
                    let y = field.add(field.mul(a, w), b);
                    let z = field.add(field.mul(a2, w), c);
                    edges.push((point_index(fq, Side::Zero, w, y, z), v1));
                }
            }
        }
    }
    BipartiteGraph::from_edges(
        2 * cube as usize,
        &edges,
        Some(point_sides(fq)),
        Some(point_labeling(codec)),
    )
}

/// The label map sigma: identity on side 0, (a,b,c)_1 -> (a,b,2ab+c)_1.
/// Only defined on labels with every coordinate in F_q.
pub fn sigma(field: &Field, label: &Label) -> Result<Label> {
    if !label.is_point() {
        return Err(Error::InvalidLabel(format!(
            "sigma is only defined on F_q^3 labels, got {label}"
        )));
    }
    let a = label.a.expect_elem();
    let b = label.b.expect_elem();
    let c = label.c.expect_elem();
    match label.side {
        Side::Zero => Ok(*label),
        Side::One => {
            let z = field.add(field.double(field.mul(a, b)), c);
            Ok(Label::point(Side::One, a, b, z))
        }
    }
}

/// Checks that sigma is a graph isomorphism B_q -> H_q: a bijection on each
/// side that preserves adjacency in both directions.
pub fn check_isomorphism(q: u64) -> Result<bool> {
    let field = Field::new(q)?;
    let bq = build_bq(q)?;
    let hq = build_hq(q)?;
    let order = bq.order();
    let map = sigma_vertex_map(&field, &bq, &hq)?;

    // Bijectivity of the vertex map.
    let mut seen = vec![false; order];
    for &m in &map {
        if seen[m as usize] {
            return Ok(false);
        }
        seen[m as usize] = true;
    }

    // Adjacency preserved forwards ...
    for u in 0..order as u32 {
        for &w in bq.neighbors(u) {
            if !hq.has_edge(map[u as usize], map[w as usize]) {
                return Ok(false);
            }
        }
    }
    // ... and backwards (every H_q edge is the image of a B_q edge).
    let mut inverse = vec![0u32; order];
    for (v, &m) in map.iter().enumerate() {
        inverse[m as usize] = v as u32;
    }
    for u in 0..order as u32 {
        for &w in hq.neighbors(u) {
            if !bq.has_edge(inverse[u as usize], inverse[w as usize]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vertex-index form of sigma between the two point-labelled graphs.
pub(crate) fn sigma_vertex_map(
    field: &Field,
    bq: &BipartiteGraph,
    hq: &BipartiteGraph,
) -> Result<Vec<u32>> {
    let order = bq.order();
    let mut map = vec![0u32; order];
    for v in 0..order as u32 {
        let label = bq
            .label_of(v)
            .ok_or_else(|| Error::Construction("B_q lost its labels".into()))?;
        let image = sigma(field, &label)?;
        let target = hq
            .vertex_of(&image)
            .ok_or_else(|| Error::Construction(format!("sigma image {image} missing")))?;
        map[v as usize] = target;
    }
    Ok(map)
}

/// Builds one stage of the augmentation from B_q up to Gamma_q, as the
/// subgraph of Gamma_q induced on the stage's label set. This reuses the
/// one rule table for every stage instead of re-transcribing formulas.
pub fn build_staged(q: u64, stage: Stage) -> Result<BipartiteGraph> {
    let gamma = build_gamma(q)?;
    Ok(induce_stage(&gamma, stage))
}

pub(crate) fn induce_stage(gamma: &BipartiteGraph, stage: Stage) -> BipartiteGraph {
    if stage == Stage::Gamma {
        return gamma.clone();
    }
    let labeling = gamma.labeling().expect("gamma carries labels");
    let keep: VertexSet = (0..gamma.order() as u32)
        .filter(|&v| stage.contains(&labeling.label_of(v)))
        .collect();
    gamma.induced_subgraph(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Shape;

    fn labels(g: &BipartiteGraph, vs: &[u32]) -> Vec<String> {
        vs.iter().map(|&v| g.describe_vertex(v)).collect()
    }

    #[test]
    fn gamma2_order_and_regularity() {
        let g = build_gamma(2).unwrap();
        assert_eq!(g.order(), 30);
        assert!(g.is_regular(3));
        assert!(g.is_bipartite_consistent());
    }

    #[test]
    fn gamma2_neighbors_of_origin() {
        let g = build_gamma(2).unwrap();
        let f = Field::new(2).unwrap();
        let v = g
            .vertex_of(&Label::point(Side::One, f.elem(0), f.elem(0), f.elem(0)))
            .unwrap();
        assert_eq!(
            labels(&g, g.neighbors(v)),
            ["(0,0,0)_0", "(1,0,0)_0", "(rho,0,0)_0"]
        );
    }

    #[test]
    fn gamma3_neighbors_match_hand_evaluation() {
        // a = b = c = 1 over F_3: 2ab + c = 0, so w runs through
        // (0,1,0), (1,2,1), (2,0,2), plus the rho neighbour (rho,1,1).
        let g = build_gamma(3).unwrap();
        let f = Field::new(3).unwrap();
        let v = g
            .vertex_of(&Label::point(Side::One, f.elem(1), f.elem(1), f.elem(1)))
            .unwrap();
        assert_eq!(
            labels(&g, g.neighbors(v)),
            ["(0,1,0)_0", "(1,2,1)_0", "(2,0,2)_0", "(rho,1,1)_0"]
        );
    }

    #[test]
    fn gamma3_dual_neighbors_of_rho_row() {
        // i = rho row of the second block: (rho,1,1)_0 -> {(1,w,1)_1} + (rho,rho,1)_1.
        let g = build_gamma_dual(3).unwrap();
        let f = Field::new(3).unwrap();
        let v = g
            .vertex_of(&Label::rho_bc(Side::Zero, f.elem(1), f.elem(1)))
            .unwrap();
        assert_eq!(
            labels(&g, g.neighbors(v)),
            ["(1,0,1)_1", "(1,1,1)_1", "(1,2,1)_1", "(rho,rho,1)_1"]
        );
    }

    #[test]
    fn dual_formulation_agrees_small_q() {
        for q in [2u64, 3, 4, 9] {
            check_dual_equivalence(q).unwrap();
        }
    }

    #[test]
    fn bq_counts_and_girth() {
        let b2 = build_bq(2).unwrap();
        assert_eq!(b2.order(), 16);
        assert!(b2.is_regular(2));

        let b3 = build_bq(3).unwrap();
        assert_eq!(b3.order(), 54);
        assert_eq!(b3.girth(), Some(8));
    }

    #[test]
    fn bq_is_induced_subgraph_of_gamma() {
        let gamma = build_gamma(4).unwrap();
        let keep: VertexSet = (0..gamma.order() as u32)
            .filter(|&v| gamma.label_of(v).unwrap().is_point())
            .collect();
        let induced = gamma.induced_subgraph(&keep);
        let bq = build_bq(4).unwrap();
        assert!(bq.same_adjacency(&induced));
    }

    #[test]
    fn bq_hq_order_and_regularity_all_q() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            for g in [build_bq(q).unwrap(), build_hq(q).unwrap()] {
                assert_eq!(g.order() as u64, 2 * q * q * q, "q={q}");
                assert!(g.is_regular(q as u32), "q={q}");
                assert!(g.is_bipartite_consistent(), "q={q}");
            }
        }
    }

    #[test]
    fn b2_girth_measured() {
        // Reported, not asserted from theory: B_2 is 2-regular on 16
        // vertices and measures as two 8-cycles.
        let b2 = build_bq(2).unwrap();
        assert_eq!(b2.girth(), Some(8));
        assert_eq!(b2.diameter(), None);
    }

    #[test]
    fn hq_counts_and_girth() {
        let h3 = build_hq(3).unwrap();
        assert_eq!(h3.order(), 54);
        assert!(h3.is_regular(3));

        let h5 = build_hq(5).unwrap();
        assert_eq!(h5.girth(), Some(8));
    }

    #[test]
    fn h2_equals_b2_in_characteristic_two() {
        // 2ab = 0, so the two rules coincide.
        let b2 = build_bq(2).unwrap();
        let h2 = build_hq(2).unwrap();
        assert!(b2.same_adjacency(&h2));
    }

    #[test]
    fn sigma_examples() {
        let f3 = Field::new(3).unwrap();
        // Side 0 is fixed pointwise.
        let l0 = Label::point(Side::Zero, f3.elem(1), f3.elem(2), f3.elem(1));
        assert_eq!(sigma(&f3, &l0).unwrap(), l0);
        // (1,2,1)_1 -> (1,2,2)_1 since 2*1*2 + 1 = 5 = 2 mod 3.
        let l1 = Label::point(Side::One, f3.elem(1), f3.elem(2), f3.elem(1));
        assert_eq!(
            sigma(&f3, &l1).unwrap(),
            Label::point(Side::One, f3.elem(1), f3.elem(2), f3.elem(2))
        );
        // Even q: sigma is the identity everywhere.
        let f4 = Field::new(4).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                for c in f4.elements() {
                    let l = Label::point(Side::One, a, b, c);
                    assert_eq!(sigma(&f4, &l).unwrap(), l);
                }
            }
        }
        // rho coordinates are rejected.
        let bad = Label::rho_bc(Side::One, f3.elem(0), f3.elem(0));
        assert!(matches!(sigma(&f3, &bad), Err(Error::InvalidLabel(_))));
    }

    #[test]
    fn sigma_is_isomorphism() {
        for q in [3u64, 4, 8] {
            assert!(check_isomorphism(q).unwrap(), "q={q}");
        }
    }

    #[test]
    fn perturbed_map_is_not_isomorphism() {
        // Swap two side-1 images: adjacency preservation must fail.
        let q = 3u64;
        let field = Field::new(q).unwrap();
        let bq = build_bq(q).unwrap();
        let hq = build_hq(q).unwrap();
        let mut map = sigma_vertex_map(&field, &bq, &hq).unwrap();
        let n = map.len();
        map.swap(n - 1, n - 2);
        let mut ok = true;
        'outer: for u in 0..n as u32 {
            for &w in bq.neighbors(u) {
                if !hq.has_edge(map[u as usize], map[w as usize]) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        assert!(!ok);
    }

    #[test]
    fn staged_orders_q3() {
        assert_eq!(build_staged(3, Stage::Bq).unwrap().order(), 54);
        assert_eq!(build_staged(3, Stage::BqPrime).unwrap().order(), 63);
        assert_eq!(build_staged(3, Stage::BqDoublePrime).unwrap().order(), 75);
        assert_eq!(build_staged(3, Stage::BqTriplePrime).unwrap().order(), 79);
        assert_eq!(build_staged(3, Stage::Gamma).unwrap().order(), 80);
    }

    #[test]
    fn staged_bq_equals_direct_bq() {
        for q in [2u64, 3, 4] {
            let direct = build_bq(q).unwrap();
            let staged = build_staged(q, Stage::Bq).unwrap();
            assert!(direct.same_adjacency(&staged), "q={q}");
        }
    }

    #[test]
    fn staged_gamma_equals_gamma() {
        let staged = build_staged(2, Stage::Gamma).unwrap();
        let direct = build_gamma(2).unwrap();
        assert!(staged.same_adjacency(&direct));
    }

    #[test]
    fn stage_degree_split_q3() {
        // B': every side-0 vertex has degree q+1, every side-1 vertex q.
        let q = 3u64;
        let bp = build_staged(q, Stage::BqPrime).unwrap();
        for v in 0..bp.order() as u32 {
            let label = bp.label_of(v).unwrap();
            let expected = match label.side {
                Side::Zero => 4,
                Side::One => 3,
            };
            assert_eq!(bp.degree(v), expected, "{label}");
        }
        // B'': everything q+1 except the new side-0 rho rows.
        let bpp = build_staged(q, Stage::BqDoublePrime).unwrap();
        for v in 0..bpp.order() as u32 {
            let label = bpp.label_of(v).unwrap();
            let is_new = label.side == Side::Zero && label.shape() != Shape::Point;
            assert_eq!(bpp.degree(v), if is_new { 3 } else { 4 }, "{label}");
        }
        // B''': everything q+1 except the new side-1 vertices.
        let bppp = build_staged(q, Stage::BqTriplePrime).unwrap();
        for v in 0..bppp.order() as u32 {
            let label = bppp.label_of(v).unwrap();
            let is_new = label.side == Side::One
                && matches!(label.shape(), Shape::RhoRhoC | Shape::RhoRhoRho);
            assert_eq!(bppp.degree(v), if is_new { 3 } else { 4 }, "{label}");
        }
    }

    #[test]
    fn stages_nest_as_labeled_subgraphs() {
        let q = 3u64;
        let gamma = build_gamma(q).unwrap();
        // Each augmentation adds new vertices of degree q, so the edge
        // counts grow by q^3, (q^2+q)q, (q+1)q and finally q+1.
        let edge_counts = [
            q * q * q * q,
            q * q * q * q + q * q * q,
            q * q * q * q + q * q * q + (q * q + q) * q,
            q * q * q * q + q * q * q + (q * q + q) * q + (q + 1) * q,
            (q + 1) * (q * q * q + q * q + q + 1),
        ];
        let mut previous: Option<BipartiteGraph> = None;
        for (stage, expected_edges) in Stage::ALL.into_iter().zip(edge_counts) {
            let current = induce_stage(&gamma, stage);
            assert_eq!(current.order() as u64, stage.order(q));
            assert_eq!(current.size() as u64, expected_edges, "{:?}", stage);
            if let Some(prev) = &previous {
                // Inducing the smaller stage's vertex set inside the larger
                // stage must reproduce it exactly.
                let keep: VertexSet = (0..current.order() as u32)
                    .filter(|&v| {
                        let label = current.label_of(v).unwrap();
                        prev.vertex_of(&label).is_some()
                    })
                    .collect();
                let reinduced = current.induced_subgraph(&keep);
                assert!(reinduced.same_adjacency(prev), "{:?}", stage);
            }
            previous = Some(current);
        }
    }

    #[test]
    fn builders_reject_non_prime_powers() {
        assert!(matches!(build_gamma(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(build_bq(10), Err(Error::NotPrimePower(10))));
        assert!(matches!(build_hq(12), Err(Error::NotPrimePower(12))));
        assert!(matches!(
            build_staged(14, Stage::Bq),
            Err(Error::NotPrimePower(14))
        ));
    }
}
