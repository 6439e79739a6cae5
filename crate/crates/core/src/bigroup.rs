//! The group `G = T^2 : <pi>` with `T = PSL(2,2^f)` and `pi` swapping the factors,
//! the order-six subgroup `L = <(a,a), (b,b)>`, and the elements `g_alpha`.

use std::cmp::Ordering;
use std::fmt;

use crate::closure::{closure, CapExceeded};
use crate::gf2::{Fel, Field};
use crate::psl2::{GroupElem2, Psl2};

/// `(x, y) pi^eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BigElem {
    pub x: GroupElem2,
    pub y: GroupElem2,
    pub eps: bool,
}

impl BigElem {
    pub const IDENTITY: BigElem = BigElem {
        x: GroupElem2::IDENTITY,
        y: GroupElem2::IDENTITY,
        eps: false,
    };

    pub fn new(x: GroupElem2, y: GroupElem2, eps: bool) -> BigElem {
        BigElem { x, y, eps }
    }

    /// Comparison in the order of the canonical byte key.
    #[inline]
    pub fn key_cmp(&self, other: &BigElem) -> Ordering {
        self.x
            .sort_key()
            .cmp(&other.x.sort_key())
            .then_with(|| self.y.sort_key().cmp(&other.y.sort_key()))
            .then_with(|| self.eps.cmp(&other.eps))
    }
}

impl fmt::Display for BigElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; pi^{})", self.x, self.y, self.eps as u8)
    }
}

/// The six elements of `L`, identity first.
#[derive(Debug, Clone)]
pub struct LGroup {
    elems: [BigElem; 6],
}

impl LGroup {
    pub fn elements(&self) -> &[BigElem; 6] {
        &self.elems
    }

    pub fn contains(&self, g: &BigElem) -> bool {
        self.elems.contains(g)
    }
}

#[derive(Debug, Clone)]
pub struct BiGroup {
    t: Psl2,
}

impl BiGroup {
    pub fn new(field: Field) -> BiGroup {
        BiGroup {
            t: Psl2::new(field),
        }
    }

    #[inline]
    pub fn psl(&self) -> &Psl2 {
        &self.t
    }

    #[inline]
    pub fn field(&self) -> &Field {
        self.t.field()
    }

    /// `2 |T|^2`.
    pub fn order(&self) -> u128 {
        let t = self.t.order_formula() as u128;
        2 * t * t
    }

    /// `2^(2f+1) (2^(2f) - 1)^2`, written out independently of [`BiGroup::order`].
    pub fn order_closed_form(f: u32) -> u128 {
        let q2 = 1u128 << (2 * f);
        (1u128 << (2 * f + 1)) * (q2 - 1) * (q2 - 1)
    }

    #[inline]
    pub fn mul(&self, g: &BigElem, h: &BigElem) -> BigElem {
        let (hx, hy) = if g.eps { (&h.y, &h.x) } else { (&h.x, &h.y) };
        BigElem {
            x: self.t.mul(&g.x, hx),
            y: self.t.mul(&g.y, hy),
            eps: g.eps ^ h.eps,
        }
    }

    pub fn inv(&self, g: &BigElem) -> BigElem {
        let (xi, yi) = (self.t.inv(&g.x), self.t.inv(&g.y));
        if g.eps {
            BigElem::new(yi, xi, true)
        } else {
            BigElem::new(xi, yi, false)
        }
    }

    /// `h^-1 g h`.
    pub fn conj(&self, g: &BigElem, h: &BigElem) -> BigElem {
        self.mul(&self.mul(&self.inv(h), g), h)
    }

    pub fn pi(&self) -> BigElem {
        BigElem::new(GroupElem2::IDENTITY, GroupElem2::IDENTITY, true)
    }

    pub fn diag(&self, h: GroupElem2) -> BigElem {
        BigElem::new(h, h, false)
    }

    pub fn l_group(&self) -> LGroup {
        let a = self.t.elem_a();
        let b = self.t.elem_b();
        let a2 = self.t.mul(&a, &a);
        let hs = [
            GroupElem2::IDENTITY,
            a,
            a2,
            b,
            self.t.mul(&a, &b),
            self.t.mul(&a2, &b),
        ];
        let elems = hs.map(|h| self.diag(h));
        LGroup { elems }
    }

    /// `(u_alpha, u_alpha b) pi`.
    pub fn g_alpha(&self, alpha: Fel) -> BigElem {
        let u = self.t.u(alpha);
        BigElem::new(u, self.t.mul(&u, &self.t.elem_b()), true)
    }

    /// Brute-force membership of `g_alpha^-1` in `L g_alpha L`.
    pub fn double_coset_symmetric(&self, alpha: Fel) -> bool {
        let l = self.l_group();
        let g = self.g_alpha(alpha);
        let target = self.inv(&g);
        l.elements().iter().any(|l1| {
            let lg = self.mul(l1, &g);
            l.elements().iter().any(|l2| self.mul(&lg, l2) == target)
        })
    }

    /// Elements of `<L, g_alpha>` by closure.
    pub fn sigma_group(&self, alpha: Fel, cap: usize) -> Result<Vec<BigElem>, CapExceeded> {
        let l = self.l_group();
        let gens = [l.elements()[1], l.elements()[3], self.g_alpha(alpha)];
        closure(BigElem::IDENTITY, &gens, |x, y| self.mul(x, y), cap)
    }

    pub fn sigma_group_order(&self, alpha: Fel, cap: usize) -> Result<usize, CapExceeded> {
        Ok(self.sigma_group(alpha, cap)?.len())
    }

    /// Closure of arbitrary generators.
    pub fn generate(&self, gens: &[BigElem], cap: usize) -> Result<Vec<BigElem>, CapExceeded> {
        closure(BigElem::IDENTITY, gens, |x, y| self.mul(x, y), cap)
    }

    /// The whole of `G`, from `(a,1)`, `(b,1)`, `(u_x,1)` and `pi`.
    pub fn whole_group(&self, cap: usize) -> Result<Vec<BigElem>, CapExceeded> {
        let id = GroupElem2::IDENTITY;
        let gens = [
            BigElem::new(self.t.elem_a(), id, false),
            BigElem::new(self.t.elem_b(), id, false),
            BigElem::new(self.t.u(self.field().x()), id, false),
            self.pi(),
        ];
        self.generate(&gens, cap)
    }

    /// `serialize(x) || serialize(y) || eps`.
    pub fn key_bytes(&self, g: &BigElem) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 * self.field().byte_width() + 1);
        self.t.serialize(&g.x, &mut out);
        self.t.serialize(&g.y, &mut out);
        out.push(g.eps as u8);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::DEFAULT_CAP;

    fn big(f: u32) -> BiGroup {
        BiGroup::new(Field::new(f, None).unwrap())
    }

    #[test]
    fn multiplication_law() {
        let g = big(3);
        let t = g.psl();
        let x = t.c(g.field().x());
        let y = t.elem_a();
        let e = BigElem::new(x, y, true);
        assert_eq!(
            g.mul(&e, &e),
            BigElem::new(t.mul(&x, &y), t.mul(&y, &x), false)
        );
        assert_eq!(g.mul(&e, &g.inv(&e)), BigElem::IDENTITY);
        assert_eq!(g.mul(&g.inv(&e), &e), BigElem::IDENTITY);
        let e0 = BigElem::new(x, y, false);
        assert_eq!(g.mul(&e0, &g.inv(&e0)), BigElem::IDENTITY);
    }

    #[test]
    fn l_is_s3() {
        for f in 1..=3 {
            let g = big(f);
            let l = g.l_group();
            let set = g
                .generate(&[l.elements()[1], l.elements()[3]], 100)
                .unwrap();
            assert_eq!(set.len(), 6);
            assert!(set.iter().all(|x| l.contains(x)));
            // pi centralises L
            for x in l.elements() {
                assert_eq!(g.conj(x, &g.pi()), *x);
            }
            // non-abelian of order 6
            assert_ne!(
                g.mul(&l.elements()[1], &l.elements()[3]),
                g.mul(&l.elements()[3], &l.elements()[1])
            );
        }
    }

    #[test]
    fn g_alpha_identities() {
        for f in 1..=4 {
            let g = big(f);
            let t = g.psl();
            let fld = g.field().clone();
            let l = g.l_group();
            let aa = l.elements()[1];
            let bb = l.elements()[3];
            for alpha in fld.elements() {
                let ga = g.g_alpha(alpha);
                assert_eq!(ga.y, t.u(fld.add(alpha, Fel::ONE)));
                assert_eq!(g.inv(&ga), g.mul(&ga, &bb));
                assert_eq!(g.mul(&g.mul(&ga, &ga), &bb), BigElem::IDENTITY);
                let c = t.c(alpha);
                assert_eq!(g.conj(&aa, &ga), BigElem::new(t.inv(&c), c, false));
                assert_eq!(g.conj(&bb, &ga), bb);
                assert!(g.double_coset_symmetric(alpha));
            }
        }
    }

    #[test]
    fn sigma_group_orders() {
        let g1 = big(1);
        assert_eq!(g1.sigma_group_order(Fel::ZERO, DEFAULT_CAP).unwrap(), 36);
        assert_eq!(
            g1.whole_group(DEFAULT_CAP).unwrap().len() as u128,
            g1.order()
        );
        let g2 = big(2);
        let i = g2.field().x();
        assert_eq!(g2.sigma_group_order(i, DEFAULT_CAP).unwrap(), 120);
        assert_eq!(
            g2.whole_group(DEFAULT_CAP).unwrap().len() as u128,
            g2.order()
        );
        assert!(g2.sigma_group_order(i, 50).is_err());
        for f in 1..=10 {
            assert_eq!(big(f).order(), BiGroup::order_closed_form(f));
        }
    }

    #[test]
    fn key_order_matches_bytes() {
        let g = big(3);
        let t = g.psl();
        let fld = g.field().clone();
        let elems: Vec<BigElem> = fld
            .elements()
            .flat_map(|a| {
                [
                    g.g_alpha(a),
                    g.diag(t.c(a)),
                    BigElem::new(t.c(a), t.u(a), a.0 % 2 == 1),
                ]
            })
            .collect();
        for x in &elems {
            for y in &elems {
                assert_eq!(x.key_cmp(y), g.key_bytes(x).cmp(&g.key_bytes(y)));
            }
        }
    }
}
