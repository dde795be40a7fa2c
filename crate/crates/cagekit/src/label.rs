//! Vertex labels `(a,b,c)_i` over F_q together with the symbol rho, and the
//! bijective codec between labels and contiguous vertex indices.
//!
//! rho never takes part in arithmetic; it is compared for equality only.
//! The only admissible coordinate patterns are `(a,b,c)` with all three in
//! F_q, `(rho,b,c)`, `(rho,rho,c)` and `(rho,rho,rho)`.

use crate::error::{Error, Result};
use crate::field::FieldElem;

/// Which side of the bipartition a label belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Zero,
    One,
}

impl Side {
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Side::Zero => 0,
            Side::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Result<Side> {
        match i {
            0 => Ok(Side::Zero),
            1 => Ok(Side::One),
            _ => Err(Error::InvalidLabel(format!("side {i} is not 0 or 1"))),
        }
    }

    #[inline]
    pub fn other(self) -> Side {
        match self {
            Side::Zero => Side::One,
            Side::One => Side::Zero,
        }
    }
}

/// A coordinate: a field element or the formal symbol rho.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Elem(FieldElem),
    Rho,
}

impl Coord {
    #[inline]
    pub fn is_rho(self) -> bool {
        matches!(self, Coord::Rho)
    }

    /// Unwraps a field element; only call on shapes the rules guarantee.
    #[inline]
    pub fn expect_elem(self) -> FieldElem {
        match self {
            Coord::Elem(e) => e,
            Coord::Rho => panic!("rho must not reach field arithmetic"),
        }
    }
}

impl std::fmt::Display for Coord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coord::Elem(e) => write!(f, "{e}"),
            Coord::Rho => write!(f, "rho"),
        }
    }
}

/// The four admissible coordinate patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// (a,b,c) with a,b,c in F_q
    Point,
    /// (rho,b,c)
    RhoBC,
    /// (rho,rho,c)
    RhoRhoC,
    /// (rho,rho,rho)
    RhoRhoRho,
}

/// A vertex label `(a,b,c)_side`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub side: Side,
    pub a: Coord,
    pub b: Coord,
    pub c: Coord,
}

impl Label {
    /// Validating constructor; rejects patterns like `(a, rho, c)`.
    pub fn new(side: Side, a: Coord, b: Coord, c: Coord) -> Result<Label> {
        let label = Label { side, a, b, c };
        match (a, b, c) {
            (Coord::Elem(_), Coord::Elem(_), Coord::Elem(_))
            | (Coord::Rho, Coord::Elem(_), Coord::Elem(_))
            | (Coord::Rho, Coord::Rho, Coord::Elem(_))
            | (Coord::Rho, Coord::Rho, Coord::Rho) => Ok(label),
            _ => Err(Error::InvalidLabel(format!("{label} has an invalid shape"))),
        }
    }

    pub fn point(side: Side, a: FieldElem, b: FieldElem, c: FieldElem) -> Label {
        Label {
            side,
            a: Coord::Elem(a),
            b: Coord::Elem(b),
            c: Coord::Elem(c),
        }
    }

    pub fn rho_bc(side: Side, b: FieldElem, c: FieldElem) -> Label {
        Label {
            side,
            a: Coord::Rho,
            b: Coord::Elem(b),
            c: Coord::Elem(c),
        }
    }

    pub fn rho_rho_c(side: Side, c: FieldElem) -> Label {
        Label {
            side,
            a: Coord::Rho,
            b: Coord::Rho,
            c: Coord::Elem(c),
        }
    }

    pub fn rho_rho_rho(side: Side) -> Label {
        Label {
            side,
            a: Coord::Rho,
            b: Coord::Rho,
            c: Coord::Rho,
        }
    }

    pub fn shape(&self) -> Shape {
        match (self.a, self.b, self.c) {
            (Coord::Elem(_), _, _) => Shape::Point,
            (Coord::Rho, Coord::Elem(_), _) => Shape::RhoBC,
            (Coord::Rho, Coord::Rho, Coord::Elem(_)) => Shape::RhoRhoC,
            _ => Shape::RhoRhoRho,
        }
    }

    /// True if every coordinate lies in F_q.
    pub fn is_point(&self) -> bool {
        self.shape() == Shape::Point
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{},{})_{}",
            self.a,
            self.b,
            self.c,
            self.side.index()
        )
    }
}

/// Bijection between labels over GF(q) and indices `0..2*(q^3+q^2+q+1)`.
///
/// Side 0 occupies the low block, side 1 the high block. Within a side the
/// order is: the q^3 points `(a,b,c)` lexicographically, then `(rho,b,c)`,
/// then `(rho,rho,c)`, then `(rho,rho,rho)`; rho sorts after every
/// field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelCodec {
    q: u32,
}

impl LabelCodec {
    pub fn new(q: u32) -> LabelCodec {
        LabelCodec { q }
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of labels per side: q^3 + q^2 + q + 1.
    #[inline]
    pub fn stride(&self) -> u32 {
        let q = self.q;
        (q * q + 1) * (q + 1)
    }

    /// Total number of labels, both sides.
    #[inline]
    pub fn order(&self) -> u32 {
        2 * self.stride()
    }

    pub fn encode(&self, label: &Label) -> u32 {
        let q = self.q;
        let base = label.side.index() as u32 * self.stride();
        let within = match (label.a, label.b, label.c) {
            (Coord::Elem(a), Coord::Elem(b), Coord::Elem(c)) => {
                debug_assert!(a.value() < q && b.value() < q && c.value() < q);
                a.value() * q * q + b.value() * q + c.value()
            }
            (Coord::Rho, Coord::Elem(b), Coord::Elem(c)) => q * q * q + b.value() * q + c.value(),
            (Coord::Rho, Coord::Rho, Coord::Elem(c)) => q * q * q + q * q + c.value(),
            (Coord::Rho, Coord::Rho, Coord::Rho) => q * q * q + q * q + q,
            _ => unreachable!("invalid label shape"),
        };
        base + within
    }

    /// Range- and shape-checked encode, for labels built from parsed input.
    pub fn try_encode(&self, label: &Label) -> Result<u32> {
        let q = self.q;
        let in_range = |c: Coord| match c {
            Coord::Elem(e) => e.value() < q,
            Coord::Rho => true,
        };
        if !(in_range(label.a) && in_range(label.b) && in_range(label.c)) {
            return Err(Error::InvalidLabel(format!(
                "{label} has a coordinate outside GF({q})"
            )));
        }
        Label::new(label.side, label.a, label.b, label.c)?;
        Ok(self.encode(label))
    }

    pub fn decode(&self, index: u32) -> Label {
        let q = self.q;
        assert!(index < self.order(), "label index out of range");
        let side = if index < self.stride() {
            Side::Zero
        } else {
            Side::One
        };
        let mut r = index % self.stride();
        if r < q * q * q {
            let a = r / (q * q);
            r %= q * q;
            return Label::point(
                side,
                FieldElem::from_raw(a),
                FieldElem::from_raw(r / q),
                FieldElem::from_raw(r % q),
            );
        }
        r -= q * q * q;
        if r < q * q {
            return Label::rho_bc(side, FieldElem::from_raw(r / q), FieldElem::from_raw(r % q));
        }
        r -= q * q;
        if r < q {
            return Label::rho_rho_c(side, FieldElem::from_raw(r));
        }
        Label::rho_rho_rho(side)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn codec_roundtrip_is_bijective() {
        for q in [2u32, 3, 4, 5] {
            let codec = LabelCodec::new(q);
            assert_eq!(codec.stride(), q * q * q + q * q + q + 1);
            for idx in 0..codec.order() {
                let label = codec.decode(idx);
                assert_eq!(codec.encode(&label), idx, "q={q} idx={idx}");
            }
        }
    }

    #[test]
    fn side_one_occupies_high_block() {
        let codec = LabelCodec::new(3);
        let f = Field::new(3).unwrap();
        let l0 = Label::point(Side::Zero, f.elem(0), f.elem(0), f.elem(0));
        let l1 = Label::point(Side::One, f.elem(0), f.elem(0), f.elem(0));
        assert_eq!(codec.encode(&l0), 0);
        assert_eq!(codec.encode(&l1), codec.stride());
        let last = Label::rho_rho_rho(Side::One);
        assert_eq!(codec.encode(&last), codec.order() - 1);
    }

    #[test]
    fn invalid_shapes_are_rejected() {
        let f = Field::new(3).unwrap();
        let bad = Label::new(
            Side::Zero,
            Coord::Elem(f.elem(1)),
            Coord::Rho,
            Coord::Elem(f.elem(2)),
        );
        assert!(matches!(bad, Err(Error::InvalidLabel(_))));
        let bad2 = Label::new(Side::One, Coord::Rho, Coord::Elem(f.elem(0)), Coord::Rho);
        assert!(matches!(bad2, Err(Error::InvalidLabel(_))));
    }

    #[test]
    fn try_encode_checks_ranges() {
        let codec = LabelCodec::new(2);
        let f5 = Field::new(5).unwrap();
        let label = Label::point(Side::Zero, f5.elem(4), f5.elem(0), f5.elem(0));
        assert!(codec.try_encode(&label).is_err());
    }

    #[test]
    fn display_spells_rho() {
        let f = Field::new(4).unwrap();
        assert_eq!(
            Label::rho_bc(Side::One, f.elem(2), f.elem(0)).to_string(),
            "(rho,2,0)_1"
        );
        assert_eq!(
            Label::rho_rho_rho(Side::Zero).to_string(),
            "(rho,rho,rho)_0"
        );
    }
}
