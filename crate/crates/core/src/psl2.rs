//! The group PSL(2,2^f) as determinant-one 2x2 matrices.
//!
//! In characteristic 2 every nonzero determinant is a square and the only scalar
//! of square 1 is 1, so scaling a matrix to determinant 1 picks a unique
//! representative of its projective class. Products are matrix products: the
//! element `g * h` sends a point `x` to `g(h(x))`, and `conj(g, h) = h^-1 g h`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::closure::{closure, CapExceeded};
use crate::gf2::{Fel, Field, FieldError};

pub const DEFAULT_CAP: usize = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PslError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("z(alpha) needs alpha != 0")]
    ZeroElement,
    #[error(transparent)]
    CapExceeded(#[from] CapExceeded),
    #[error("element set is not closed under products and inverses")]
    NotClosed,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A canonical (determinant-one) representative of an element of PSL(2,2^f),
/// standing for the map `x -> (a x + b) / (c x + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElem2 {
    a: Fel,
    b: Fel,
    c: Fel,
    d: Fel,
}

impl GroupElem2 {
    pub const IDENTITY: GroupElem2 = GroupElem2 {
        a: Fel::ONE,
        b: Fel::ZERO,
        c: Fel::ZERO,
        d: Fel::ONE,
    };

    #[inline]
    pub fn entries(&self) -> [Fel; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Total order matching lexicographic comparison of the serialized bytes
    /// (entries little-endian, so byte-swapping gives the comparison key).
    #[inline]
    pub fn sort_key(&self) -> [u32; 4] {
        [
            self.a.0.swap_bytes(),
            self.b.0.swap_bytes(),
            self.c.0.swap_bytes(),
            self.d.0.swap_bytes(),
        ]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for GroupElem2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{:x},{:x},{:x},{:x}]", self.a, self.b, self.c, self.d)
    }
}

/// A point of the projective line GF(q) + {inf}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(Fel),
    Infinity,
}

/// A finite set of group elements closed under products and inverses.
#[derive(Debug, Clone)]
pub struct SubgroupSet {
    elems: Vec<GroupElem2>,
    members: HashSet<GroupElem2>,
}

impl SubgroupSet {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, g: &GroupElem2) -> bool {
        self.members.contains(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElem2> {
        self.elems.iter()
    }

    pub fn elements(&self) -> &[GroupElem2] {
        &self.elems
    }

    /// Same elements, regardless of enumeration order.
    pub fn same_set(&self, other: &SubgroupSet) -> bool {
        self.len() == other.len() && self.elems.iter().all(|g| other.contains(g))
    }
}

/// PSL(2,2^f) over a fixed field.
#[derive(Debug, Clone)]
pub struct Psl2 {
    field: Field,
}

impl Psl2 {
    pub fn new(field: Field) -> Psl2 {
        Psl2 { field }
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// |PSL(2,q)| = q(q^2 - 1).
    pub fn order_formula(&self) -> u64 {
        let q = self.field.order();
        q * (q * q - 1)
    }

    pub fn identity(&self) -> GroupElem2 {
        GroupElem2::IDENTITY
    }

    /// The canonical element of `x -> (ax+b)/(cx+d)`.
    pub fn mobius(&self, a: Fel, b: Fel, c: Fel, d: Fel) -> Result<GroupElem2, PslError> {
        let f = &self.field;
        let det = f.add(f.mul(a, d), f.mul(b, c));
        if det.is_zero() {
            return Err(PslError::SingularMatrix);
        }
        let lambda = f.sqrt(f.inv(det)?);
        Ok(GroupElem2 {
            a: f.mul(lambda, a),
            b: f.mul(lambda, b),
            c: f.mul(lambda, c),
            d: f.mul(lambda, d),
        })
    }

    #[inline]
    pub fn mul(&self, g: &GroupElem2, h: &GroupElem2) -> GroupElem2 {
        let f = &self.field;
        GroupElem2 {
            a: f.add(f.mul(g.a, h.a), f.mul(g.b, h.c)),
            b: f.add(f.mul(g.a, h.b), f.mul(g.b, h.d)),
            c: f.add(f.mul(g.c, h.a), f.mul(g.d, h.c)),
            d: f.add(f.mul(g.c, h.b), f.mul(g.d, h.d)),
        }
    }

    /// The adjugate, which is the inverse at determinant one in characteristic 2.
    #[inline]
    pub fn inv(&self, g: &GroupElem2) -> GroupElem2 {
        GroupElem2 {
            a: g.d,
            b: g.b,
            c: g.c,
            d: g.a,
        }
    }

    /// `h^-1 g h`.
    pub fn conj(&self, g: &GroupElem2, h: &GroupElem2) -> GroupElem2 {
        self.mul(&self.mul(&self.inv(h), g), h)
    }

    pub fn order(&self, g: &GroupElem2) -> u64 {
        let mut x = *g;
        let mut n = 1;
        while !x.is_identity() {
            x = self.mul(&x, g);
            n += 1;
        }
        n
    }

    /// `t[1,1,1,0]`: x -> 1 + 1/x.
    pub fn elem_a(&self) -> GroupElem2 {
        self.mobius(Fel::ONE, Fel::ONE, Fel::ONE, Fel::ZERO)
            .unwrap()
    }

    /// `t[1,1,0,1]`: x -> x + 1.
    pub fn elem_b(&self) -> GroupElem2 {
        self.u(Fel::ONE)
    }

    /// `t[1,alpha,0,1]`: x -> x + alpha.
    pub fn u(&self, alpha: Fel) -> GroupElem2 {
        GroupElem2 {
            a: Fel::ONE,
            b: alpha,
            c: Fel::ZERO,
            d: Fel::ONE,
        }
    }

    /// `a` conjugated by `u(alpha)`; equals `t[alpha+1, alpha^2+alpha+1, 1, alpha]`.
    pub fn c(&self, alpha: Fel) -> GroupElem2 {
        self.conj(&self.elem_a(), &self.u(alpha))
    }

    /// `t[alpha^-1,0,0,1]`: x -> x / alpha.
    pub fn z(&self, alpha: Fel) -> Result<GroupElem2, PslError> {
        if alpha.is_zero() {
            return Err(PslError::ZeroElement);
        }
        let inv = self.field.inv(alpha)?;
        self.mobius(inv, Fel::ZERO, Fel::ZERO, Fel::ONE)
    }

    /// Entrywise `i`-th power of the Frobenius.
    pub fn frob_aut(&self, g: &GroupElem2, i: u32) -> GroupElem2 {
        let f = &self.field;
        GroupElem2 {
            a: f.frob(g.a, i),
            b: f.frob(g.b, i),
            c: f.frob(g.c, i),
            d: f.frob(g.d, i),
        }
    }

    /// Mobius action; `inf -> a/c` and division by zero gives `inf`.
    pub fn apply(&self, g: &GroupElem2, x: ProjPoint) -> ProjPoint {
        let f = &self.field;
        let (num, den) = match x {
            ProjPoint::Infinity => (g.a, g.c),
            ProjPoint::Finite(x) => (f.add(f.mul(g.a, x), g.b), f.add(f.mul(g.c, x), g.d)),
        };
        if den.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(f.div(num, den).unwrap())
        }
    }

    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        self.field
            .elements()
            .map(ProjPoint::Finite)
            .chain(std::iter::once(ProjPoint::Infinity))
    }

    /// Subgroup generated by `gens`, enumerated breadth-first from the identity.
    pub fn generate(&self, gens: &[GroupElem2], cap: usize) -> Result<SubgroupSet, PslError> {
        let elems = closure(GroupElem2::IDENTITY, gens, |x, g| self.mul(x, g), cap)?;
        let members = elems.iter().copied().collect();
        Ok(SubgroupSet { elems, members })
    }

    /// The whole group, enumerated directly from the determinant condition (no
    /// group multiplication involved).
    pub fn all_elements(&self) -> Vec<GroupElem2> {
        let f = &self.field;
        let mut out = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    // a d + b c = 1
                    let rhs = f.add(Fel::ONE, f.mul(b, c));
                    if a.is_zero() {
                        if rhs.is_zero() {
                            for d in f.elements() {
                                out.push(GroupElem2 { a, b, c, d });
                            }
                        }
                    } else {
                        let d = f.div(rhs, a).unwrap();
                        out.push(GroupElem2 { a, b, c, d });
                    }
                }
            }
        }
        out
    }

    /// The whole group as a subgroup set, via [`Psl2::generate`] on `a`, `b` and
    /// `u(x)` for the class `x` of the polynomial variable.
    pub fn whole_group(&self, cap: usize) -> Result<SubgroupSet, PslError> {
        let gens = [self.elem_a(), self.elem_b(), self.u(self.field.x())];
        self.generate(&gens, cap)
    }

    /// Wraps an explicit element list, verifying closure by all pairwise products.
    pub fn subgroup_from_elements(&self, elems: Vec<GroupElem2>) -> Result<SubgroupSet, PslError> {
        let members: HashSet<GroupElem2> = elems.iter().copied().collect();
        if members.len() != elems.len() || !members.contains(&GroupElem2::IDENTITY) {
            return Err(PslError::NotClosed);
        }
        for x in &elems {
            if !members.contains(&self.inv(x)) {
                return Err(PslError::NotClosed);
            }
            for y in &elems {
                if !members.contains(&self.mul(x, y)) {
                    return Err(PslError::NotClosed);
                }
            }
        }
        Ok(SubgroupSet { elems, members })
    }

    pub fn centralizer(&self, s: &SubgroupSet, g: &GroupElem2) -> Result<SubgroupSet, PslError> {
        let elems = s
            .iter()
            .filter(|x| self.mul(x, g) == self.mul(g, x))
            .copied()
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn normalizer(&self, s: &SubgroupSet, h: &SubgroupSet) -> Result<SubgroupSet, PslError> {
        let elems = s
            .iter()
            .filter(|x| h.iter().all(|y| h.contains(&self.conj(y, x))))
            .copied()
            .collect();
        self.subgroup_from_elements(elems)
    }

    /// `4 * ceil(f/8)` bytes: the entries a, b, c, d, each little-endian.
    pub fn serialize(&self, g: &GroupElem2, out: &mut Vec<u8>) {
        let w = self.field.byte_width();
        for e in g.entries() {
            out.extend_from_slice(&e.0.to_le_bytes()[..w]);
        }
    }

    pub fn deserialize(&self, bytes: &[u8]) -> Result<GroupElem2, PslError> {
        let w = self.field.byte_width();
        if bytes.len() != 4 * w {
            return Err(PslError::SingularMatrix);
        }
        let mut e = [Fel::ZERO; 4];
        for (i, chunk) in bytes.chunks(w).enumerate() {
            let mut buf = [0u8; 4];
            buf[..w].copy_from_slice(chunk);
            e[i] = self.field.element(u32::from_le_bytes(buf) as u64)?;
        }
        let g = self.mobius(e[0], e[1], e[2], e[3])?;
        if g.entries() != e {
            return Err(PslError::SingularMatrix);
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psl(f: u32) -> Psl2 {
        Psl2::new(Field::new(f, None).unwrap())
    }

    #[test]
    fn mobius_canonical_form() {
        let t = psl(1);
        let g = t.mobius(Fel::ONE, Fel::ONE, Fel::ZERO, Fel::ONE).unwrap();
        assert_eq!(g.entries(), [Fel::ONE, Fel::ONE, Fel::ZERO, Fel::ONE]);

        let t4 = psl(2);
        let i = t4.field().x();
        assert!(t4.mobius(i, Fel::ZERO, Fel::ZERO, i).unwrap().is_identity());

        let t8 = psl(3);
        let f = t8.field().clone();
        let j = f.x();
        // the unique lambda with lambda^2 j = 1, by search
        let lambda = f
            .elements()
            .find(|&l| f.mul(f.square(l), j) == Fel::ONE)
            .unwrap();
        assert_eq!(lambda, f.pow(j, 3));
        let g = t8.mobius(j, Fel::ZERO, Fel::ZERO, Fel::ONE).unwrap();
        assert_eq!(
            g.entries(),
            [f.pow(j, 4), Fel::ZERO, Fel::ZERO, f.pow(j, 3)]
        );

        assert_eq!(t8.mobius(j, j, j, j), Err(PslError::SingularMatrix));
    }

    #[test]
    fn mobius_is_scale_invariant() {
        for fdeg in 1..=4 {
            let t = psl(fdeg);
            let f = t.field().clone();
            for g in t.all_elements() {
                let [a, b, c, d] = g.entries();
                for l in f.elements().skip(1) {
                    let h = t
                        .mobius(f.mul(l, a), f.mul(l, b), f.mul(l, c), f.mul(l, d))
                        .unwrap();
                    assert_eq!(h, g);
                }
            }
        }
    }

    #[test]
    fn named_elements() {
        for fdeg in 1..=4 {
            let t = psl(fdeg);
            let f = t.field().clone();
            assert_eq!(t.order(&t.elem_a()), 3);
            assert_eq!(t.order(&t.elem_b()), 2);
            assert!(t.u(Fel::ZERO).is_identity());
            assert_eq!(t.u(Fel::ONE), t.elem_b());
            assert!(t.inv(&t.identity()).is_identity());
            assert!(matches!(t.z(Fel::ZERO), Err(PslError::ZeroElement)));
            for alpha in f.elements() {
                let a2 = f.square(alpha);
                let expected = t
                    .mobius(
                        f.add(alpha, Fel::ONE),
                        f.add(f.add(a2, alpha), Fel::ONE),
                        Fel::ONE,
                        alpha,
                    )
                    .unwrap();
                assert_eq!(t.c(alpha), expected);
                assert_eq!(t.conj(&t.elem_a(), &t.u(alpha)), t.c(alpha));
                assert_eq!(t.mul(&t.u(alpha), &t.elem_b()), t.u(f.add(alpha, Fel::ONE)));
                assert_eq!(t.mul(&t.elem_b(), &t.u(alpha)), t.u(f.add(alpha, Fel::ONE)));
                if !alpha.is_zero() {
                    let z = t.z(alpha).unwrap();
                    assert_eq!(t.conj(&t.elem_b(), &z), t.u(alpha));
                    assert_eq!(t.order(&z), f.mult_order(alpha).unwrap());
                }
            }
        }
    }

    #[test]
    fn action_agrees_with_products() {
        for fdeg in 1..=4 {
            let t = psl(fdeg);
            let elems = t.all_elements();
            let pts: Vec<_> = t.points().collect();
            for (n, g) in elems.iter().enumerate().step_by(7) {
                for h in elems.iter().skip(n % 5).step_by(11) {
                    let gh = t.mul(g, h);
                    for &x in &pts {
                        assert_eq!(t.apply(&gh, x), t.apply(g, t.apply(h, x)));
                    }
                }
            }
        }
    }

    #[test]
    fn point_action_examples() {
        let t = psl(3);
        let f = t.field().clone();
        for x in f.elements() {
            assert_eq!(
                t.apply(&t.elem_b(), ProjPoint::Finite(x)),
                ProjPoint::Finite(f.add(x, Fel::ONE))
            );
            assert_eq!(
                t.apply(&t.identity(), ProjPoint::Finite(x)),
                ProjPoint::Finite(x)
            );
        }
        assert_eq!(
            t.apply(&t.elem_b(), ProjPoint::Infinity),
            ProjPoint::Infinity
        );
        assert_eq!(
            t.apply(&t.elem_a(), ProjPoint::Finite(Fel::ZERO)),
            ProjPoint::Infinity
        );
        assert_eq!(
            t.apply(&t.elem_a(), ProjPoint::Infinity),
            ProjPoint::Finite(Fel::ONE)
        );
    }

    #[test]
    fn frobenius_inverts_c_exactly_when_alpha_moves_to_alpha_plus_one() {
        for fdeg in 1..=6 {
            let t = psl(fdeg);
            let f = t.field().clone();
            for alpha in f.elements() {
                let c = t.c(alpha);
                for i in 0..fdeg {
                    let lhs = t.frob_aut(&c, i) == t.inv(&c);
                    let rhs = f.frob(alpha, i) == f.add(alpha, Fel::ONE);
                    assert_eq!(lhs, rhs, "f={fdeg} alpha={alpha} i={i}");
                }
            }
        }
        let t = psl(2);
        let i = t.field().x();
        assert_eq!(t.frob_aut(&t.c(i), 1), t.inv(&t.c(i)));
        let t = psl(3);
        let j = t.field().x();
        assert_ne!(t.frob_aut(&t.c(j), 1), t.inv(&t.c(j)));
        for k in 0..3 {
            assert_eq!(t.frob_aut(&t.elem_b(), k), t.elem_b());
        }
    }

    #[test]
    fn subgroups() {
        let t = psl(3);
        let f = t.field().clone();
        let h = t.generate(&[t.elem_a(), t.elem_b()], DEFAULT_CAP).unwrap();
        assert_eq!(h.len(), 6);
        let whole = t
            .generate(&[t.elem_a(), t.elem_b(), t.u(f.x())], DEFAULT_CAP)
            .unwrap();
        assert_eq!(whole.len(), 504);
        assert_eq!(t.all_elements().len(), 504);

        let p = t.centralizer(&whole, &t.elem_b()).unwrap();
        assert_eq!(p.len(), 8);
        assert!(f.elements().all(|a| p.contains(&t.u(a))));
        assert!(t.normalizer(&whole, &h).unwrap().same_set(&h));
        let ch = t.centralizer(&h, &t.elem_b()).unwrap();
        assert_eq!(ch.len(), 2);
        assert!(ch.contains(&t.elem_b()));

        let t16 = psl(4);
        let k5 = t16.field().pow(t16.field().x(), 5);
        let sub = t16
            .generate(&[t16.elem_a(), t16.elem_b(), t16.u(k5)], DEFAULT_CAP)
            .unwrap();
        assert_eq!(sub.len(), 60);
        assert!(matches!(
            t16.generate(&[t16.elem_a(), t16.elem_b(), t16.u(k5)], 10),
            Err(PslError::CapExceeded(_))
        ));
    }

    #[test]
    fn generated_subgroup_orders() {
        for fdeg in 1..=4 {
            let t = psl(fdeg);
            let f = t.field().clone();
            for alpha in f.elements() {
                let e = f.subfield_degree(alpha);
                let q = 1u64 << e;
                let s = t
                    .generate(&[t.elem_a(), t.elem_b(), t.u(alpha)], DEFAULT_CAP)
                    .unwrap();
                assert_eq!(s.len() as u64, q * (q * q - 1), "f={fdeg} alpha={alpha}");
            }
        }
    }

    #[test]
    fn serialization() {
        let t = psl(12);
        let f = t.field().clone();
        let g = t.c(f.x());
        let mut bytes = Vec::new();
        t.serialize(&g, &mut bytes);
        assert_eq!(bytes.len(), 8);
        assert_eq!(t.deserialize(&bytes).unwrap(), g);
        assert_eq!(format!("{}", psl(2).elem_a()), "t[1,1,1,0]");
    }

    #[test]
    fn sort_key_matches_byte_order() {
        let t = psl(10);
        let f = t.field().clone();
        let elems: Vec<_> = (1..40u32).map(|n| t.c(f.pow(f.x(), n as u64))).collect();
        for g in &elems {
            for h in &elems {
                let (mut bg, mut bh) = (Vec::new(), Vec::new());
                t.serialize(g, &mut bg);
                t.serialize(h, &mut bh);
                assert_eq!(g.sort_key().cmp(&h.sort_key()), bg.cmp(&bh));
            }
        }
    }
}
