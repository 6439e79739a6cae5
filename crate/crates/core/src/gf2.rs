//! Arithmetic in the binary fields GF(2^f), 1 <= f <= 24, in polynomial basis.
//!
//! Elements are bitmasks: bit `i` is the coefficient of `x^i`. For degrees up to
//! [`TABLE_MAX_DEGREE`] multiplication goes through log/antilog tables, above that
//! through a carry-less shift-and-add product followed by reduction.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const MAX_DEGREE: u32 = 24;
const TABLE_MAX_DEGREE: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field degree {0} is outside 1..={MAX_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} is not monic of degree {degree}")]
    NotMonic { degree: u32, modulus: u64 },
    #[error("modulus {0:#x} is reducible over GF(2)")]
    NonIrreducible(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("operation needs an even degree, got {0}")]
    OddDegree(u32),
    #[error("element {0:#x} does not fit in the field")]
    OutOfRange(u64),
    #[error("bad field spec {0:?}: expected \"f=<int>[,poly=0x<hex>]\"")]
    BadSpec(String),
}

/// A field element, stored as its polynomial-basis bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fel(pub u32);

impl Fel {
    pub const ZERO: Fel = Fel(0);
    pub const ONE: Fel = Fel(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl fmt::LowerHex for Fel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// Carry-less product of two polynomials over GF(2).
pub fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shifted = a as u128;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= shifted;
        }
        b >>= 1;
        shifted <<= 1;
    }
    acc
}

#[inline]
fn degree_of(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub fn poly_rem(a: u128, m: u64) -> u64 {
    assert!(m != 0, "polynomial modulus must be nonzero");
    let m = m as u128;
    let dm = degree_of(m);
    let mut a = a;
    while a != 0 && degree_of(a) >= dm {
        a ^= m << (degree_of(a) - dm);
    }
    a as u64
}

/// Irreducibility over GF(2) by trial division with every monic polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible(poly: u64) -> bool {
    if poly < 2 {
        return false;
    }
    let deg = 63 - poly.leading_zeros();
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for low in 0..(1u64 << d) {
            let divisor = (1u64 << d) | low;
            if poly_rem(poly as u128, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// Prime factorisation of `n` by trial division, smallest prime first.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius_mu(n: u32) -> i64 {
    let mut mu = 1;
    for (_, e) in factorize(n as u64) {
        if e > 1 {
            return 0;
        }
        mu = -mu;
    }
    mu
}

/// Number of elements of GF(2^f) lying in no proper subfield, by Mobius inversion
/// over the subfield lattice.
pub fn generator_count_formula(f: u32) -> u64 {
    let total: i64 = divisors(f)
        .into_iter()
        .map(|d| mobius_mu(f / d) * (1i64 << d))
        .sum();
    total as u64
}

/// The moduli used for the small fields when none is given: x^2+x+1, x^3+x+1, x^4+x+1.
fn preferred_modulus(f: u32) -> Option<u64> {
    match f {
        2 => Some(0b111),
        3 => Some(0b1011),
        4 => Some(0b10011),
        _ => None,
    }
}

/// Lexicographically smallest (as an integer) monic irreducible of degree `f`.
pub fn smallest_irreducible(f: u32) -> u64 {
    let start = 1u64 << f;
    (start..start << 1)
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

/// A power of the Frobenius, applied by xoring one table entry per byte.
#[derive(Debug, Clone)]
pub struct FrobMap {
    tables: Vec<Vec<u32>>,
}

impl FrobMap {
    #[inline]
    pub fn apply(&self, a: Fel) -> Fel {
        let mut out = 0;
        for (c, t) in self.tables.iter().enumerate() {
            out ^= t[((a.0 >> (8 * c)) & 0xff) as usize];
        }
        Fel(out)
    }
}

#[derive(Clone)]
struct LogTables {
    // exp has length 2(q-1) so that exp[log a + log b] needs no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A concrete GF(2^f) together with its modulus.
#[derive(Clone)]
pub struct Field {
    degree: u32,
    modulus: u64,
    group_order: u64,
    order_factors: Vec<(u64, u32)>,
    tables: Option<LogTables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("degree", &self.degree)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(2^f). Without an explicit modulus the small fields use x^2+x+1,
    /// x^3+x+1, x^4+x+1 and everything else the smallest irreducible.
    pub fn new(f: u32, modulus: Option<u64>) -> Result<Field, FieldError> {
        if f == 0 || f > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(f));
        }
        let modulus = match modulus {
            Some(m) => {
                if m >> f != 1 {
                    return Err(FieldError::NotMonic {
                        degree: f,
                        modulus: m,
                    });
                }
                if !is_irreducible(m) {
                    return Err(FieldError::NonIrreducible(m));
                }
                m
            }
            None => preferred_modulus(f).unwrap_or_else(|| smallest_irreducible(f)),
        };
        let group_order = (1u64 << f) - 1;
        let mut field = Field {
            degree: f,
            modulus,
            group_order,
            order_factors: factorize(group_order),
            tables: None,
        };
        if f <= TABLE_MAX_DEGREE {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Parses `"f=<int>"` or `"f=<int>,poly=0x<hex>"`.
    pub fn from_spec(spec: &str) -> Result<Field, FieldError> {
        let bad = || FieldError::BadSpec(spec.to_string());
        let mut degree = None;
        let mut poly = None;
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "f" => degree = Some(value.trim().parse::<u32>().map_err(|_| bad())?),
                "poly" => {
                    let v = value.trim();
                    let hex = v
                        .strip_prefix("0x")
                        .or_else(|| v.strip_prefix("0X"))
                        .ok_or_else(bad)?;
                    poly = Some(u64::from_str_radix(hex, 16).map_err(|_| bad())?);
                }
                _ => return Err(bad()),
            }
        }
        Field::new(degree.ok_or_else(bad)?, poly)
    }

    pub fn spec_string(&self) -> String {
        format!("f={},poly={:#x}", self.degree, self.modulus)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn order(&self) -> u64 {
        1u64 << self.degree
    }

    /// Bytes used for one element in serialized form.
    #[inline]
    pub fn byte_width(&self) -> usize {
        self.degree.div_ceil(8) as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = Fel> + '_ {
        (0..self.order() as u32).map(Fel)
    }

    pub fn element(&self, bits: u64) -> Result<Fel, FieldError> {
        if bits >= self.order() {
            return Err(FieldError::OutOfRange(bits));
        }
        Ok(Fel(bits as u32))
    }

    /// The class of `x`, i.e. the root of the modulus (for f = 1 this is 0).
    pub fn x(&self) -> Fel {
        Fel(poly_rem(2, self.modulus) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        Fel(a.0 ^ b.0)
    }

    #[inline]
    fn mul_slow(&self, a: Fel, b: Fel) -> Fel {
        Fel(poly_rem(clmul(a.0 as u64, b.0 as u64), self.modulus) as u32)
    }

    #[inline]
    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        if a.0 == 0 || b.0 == 0 {
            return Fel::ZERO;
        }
        match &self.tables {
            Some(t) => Fel(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: Fel) -> Fel {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fel, n: u64) -> Fel {
        if n == 0 {
            return Fel::ONE;
        }
        if a.is_zero() {
            return Fel::ZERO;
        }
        if let Some(t) = &self.tables {
            let e = (t.log[a.0 as usize] as u64 * (n % self.group_order)) % self.group_order;
            return Fel(t.exp[e as usize]);
        }
        let mut base = a;
        let mut acc = Fel::ONE;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fel) -> Result<Fel, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.group_order - 1))
    }

    pub fn div(&self, a: Fel, b: Fel) -> Result<Fel, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(2^i)`, by `i`-fold squaring.
    pub fn frob(&self, a: Fel, i: u32) -> Fel {
        let mut r = a;
        for _ in 0..i % self.degree {
            r = self.square(r);
        }
        r
    }

    /// The linear map `a -> a^(2^i)` as byte-indexed tables.
    pub fn frob_map(&self, i: u32) -> FrobMap {
        let chunks = self.degree.div_ceil(8) as usize;
        let tables = (0..chunks)
            .map(|c| {
                (0..256u32)
                    .map(|byte| {
                        let bits = (byte << (8 * c)) & (self.order() as u32 - 1);
                        self.frob(Fel(bits), i).0
                    })
                    .collect()
            })
            .collect();
        FrobMap { tables }
    }

    /// The unique square root, `a^(2^(f-1))`.
    pub fn sqrt(&self, a: Fel) -> Fel {
        self.frob(a, self.degree - 1)
    }

    /// Multiplicative order, using the factorisation of 2^f - 1.
    pub fn mult_order(&self, a: Fel) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        let mut n = self.group_order;
        for &(p, e) in &self.order_factors {
            for _ in 0..e {
                if self.pow(a, n / p) == Fel::ONE {
                    n /= p;
                } else {
                    break;
                }
            }
        }
        Ok(n)
    }

    /// Degree `e` of the subfield GF(2^e) generated by `a`.
    pub fn subfield_degree(&self, a: Fel) -> u32 {
        if a.0 <= 1 {
            return 1;
        }
        let order = self.mult_order(a).expect("nonzero");
        divisors(self.degree)
            .into_iter()
            .find(|&e| ((1u64 << e) - 1).is_multiple_of(order))
            .expect("e = f always qualifies")
    }

    pub fn is_generator(&self, a: Fel) -> bool {
        self.subfield_degree(a) == self.degree
    }

    /// Generator test through the Frobenius: `a` lies in no maximal proper subfield.
    /// Agrees with [`Field::is_generator`] but avoids order computations.
    pub fn is_generator_frobenius(&self, a: Fel) -> bool {
        factorize(self.degree as u64)
            .into_iter()
            .all(|(p, _)| self.frob(a, self.degree / p as u32) != a)
    }

    /// Whether `a^(2^(f/2)) = a + 1`.
    pub fn half_frob_fixed(&self, a: Fel) -> Result<bool, FieldError> {
        if !self.degree.is_multiple_of(2) {
            return Err(FieldError::OddDegree(self.degree));
        }
        Ok(self.frob(a, self.degree / 2) == self.add(a, Fel::ONE))
    }

    /// Elements `alpha` for which the coset graph over this field is connected:
    /// generators, excluding for even degree those with `alpha^(2^(f/2)) = alpha + 1`.
    pub fn connected_alphas(&self) -> Vec<Fel> {
        if self.degree < 2 {
            return Vec::new();
        }
        self.elements()
            .filter(|&a| self.is_generator(a))
            .filter(|&a| self.degree % 2 == 1 || !self.half_frob_fixed(a).unwrap())
            .collect()
    }

    fn build_tables(&self) -> LogTables {
        let q = self.order() as usize;
        let n = self.group_order;
        let primitive = (2..q as u32)
            .map(Fel)
            .find(|&g| {
                self.order_factors
                    .iter()
                    .all(|&(p, _)| self.pow_slow(g, n / p) != Fel::ONE)
            })
            .unwrap_or(Fel::ONE);
        let mut exp = vec![0u32; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut cur = Fel::ONE;
        for i in 0..q - 1 {
            exp[i] = cur.0;
            exp[i + q - 1] = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_slow(cur, primitive);
        }
        LogTables { exp, log }
    }

    fn pow_slow(&self, a: Fel, mut n: u64) -> Fel {
        let mut base = a;
        let mut acc = Fel::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            n >>= 1;
        }
        acc
    }

    /// Parses an element written as hex, with or without a `0x` prefix.
    pub fn parse_element(&self, s: &str) -> Result<Fel, FieldError> {
        let t = s.trim();
        let t = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        let v = u64::from_str_radix(t, 16).map_err(|_| FieldError::BadSpec(s.to_string()))?;
        self.element(v)
    }
}

impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Field::from_spec(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(f: u32) -> Field {
        Field::new(f, None).unwrap()
    }

    fn brute_order(field: &Field, a: Fel) -> u64 {
        let mut x = a;
        let mut n = 1;
        while x != Fel::ONE {
            x = field.mul_slow(x, a);
            n += 1;
        }
        n
    }

    #[test]
    fn default_moduli() {
        assert_eq!(gf(2).modulus(), 0b111);
        assert_eq!(gf(3).modulus(), 0b1011);
        assert_eq!(gf(4).modulus(), 0b10011);
        assert_eq!(gf(1).modulus(), 0b10);
        for f in 5..=MAX_DEGREE {
            let field = gf(f);
            assert!(is_irreducible(field.modulus()));
            assert_eq!(field.modulus() >> f, 1);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^4+x^2+x+1 = (x+1)(x^3+x^2+1)
        assert_eq!(clmul(0b11, 0b1101), 0b10111);
        assert_eq!(
            Field::new(4, Some(0b10111)),
            Err(FieldError::NonIrreducible(0b10111))
        );
        assert!(matches!(
            Field::new(0, None),
            Err(FieldError::DegreeOutOfRange(0))
        ));
        assert!(matches!(
            Field::new(25, None),
            Err(FieldError::DegreeOutOfRange(25))
        ));
        assert!(matches!(
            Field::new(3, Some(0b111)),
            Err(FieldError::NotMonic { .. })
        ));
    }

    #[test]
    fn spec_strings() {
        let f = Field::from_spec("f=4,poly=0x13").unwrap();
        assert_eq!(f, gf(4));
        assert_eq!(f.spec_string(), "f=4,poly=0x13");
        assert_eq!(Field::from_spec("f=3").unwrap().modulus(), 0xb);
        assert!(matches!(
            Field::from_spec("g=3"),
            Err(FieldError::BadSpec(_))
        ));
        assert!(matches!(
            Field::from_spec("f=4,poly=0x17"),
            Err(FieldError::NonIrreducible(0x17))
        ));
    }

    #[test]
    fn small_field_arithmetic() {
        let f2 = gf(2);
        let i = f2.x();
        assert_eq!(i, Fel(0b10));
        assert_eq!(f2.mul(i, i), f2.add(i, Fel::ONE));
        assert_eq!(f2.sqrt(Fel(0b11)), i);
        assert_eq!(f2.frob(i, 1), Fel(0b11));

        let f3 = gf(3);
        let j = f3.x();
        assert_eq!(f3.pow(j, 7), Fel::ONE);
        assert_eq!(f3.sqrt(f3.square(j)), j);
        assert_eq!(f3.mult_order(j), Ok(7));
        assert_eq!(f3.mult_order(Fel::ONE), Ok(1));
        assert_eq!(f3.mult_order(Fel::ZERO), Err(FieldError::ZeroElement));
        assert_eq!(f3.inv(Fel::ZERO), Err(FieldError::DivisionByZero));

        let f4 = gf(4);
        let k = f4.x();
        assert_eq!(f4.frob(k, 2), f4.add(k, Fel::ONE));
        let k5 = f4.pow(k, 5);
        assert_eq!(f4.mult_order(k5), Ok(3));
        assert_eq!(brute_order(&f4, k5), 3);
        assert_eq!(f4.subfield_degree(k5), 2);
        assert_eq!(f4.subfield_degree(k), 4);
        assert!(!f4.is_generator(k5));
        assert!(f4.half_frob_fixed(k).unwrap());
        assert!(!f4.half_frob_fixed(f4.pow(k, 3)).unwrap());
        assert_eq!(f3.half_frob_fixed(j), Err(FieldError::OddDegree(3)));
    }

    #[test]
    fn sqrt_and_frob_edge_cases() {
        for f in 1..=6 {
            let field = gf(f);
            assert_eq!(field.sqrt(Fel::ZERO), Fel::ZERO);
            assert_eq!(field.sqrt(Fel::ONE), Fel::ONE);
            for a in field.elements() {
                assert_eq!(field.frob(a, 0), a);
                assert_eq!(field.frob(a, f), a);
            }
        }
    }

    #[test]
    fn generator_counts() {
        let f3 = gf(3);
        assert_eq!(f3.elements().filter(|&a| f3.is_generator(a)).count(), 6);
        assert!(!gf(2).is_generator(Fel::ONE));
        assert_eq!(f3.connected_alphas().len(), 6);
        assert_eq!(gf(4).connected_alphas().len(), 8);
        assert_eq!(gf(5).connected_alphas().len(), 30);
        for f in 1..=12 {
            let field = gf(f);
            let brute = field.elements().filter(|&a| field.is_generator(a)).count() as u64;
            let frob = field
                .elements()
                .filter(|&a| field.is_generator_frobenius(a))
                .count() as u64;
            assert_eq!(brute, generator_count_formula(f), "f={f}");
            assert_eq!(frob, brute, "f={f}");
        }
    }

    #[test]
    fn table_and_slow_multiplication_agree() {
        for f in 1..=8 {
            let field = gf(f);
            for a in field.elements() {
                for b in field.elements() {
                    assert_eq!(field.mul(a, b), field.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn mult_order_matches_brute_force() {
        for f in [1, 2, 3, 4, 6, 8, 10] {
            let field = gf(f);
            for a in field.elements().skip(1) {
                assert_eq!(field.mult_order(a).unwrap(), brute_order(&field, a));
            }
        }
    }

    #[test]
    fn large_degree_without_tables() {
        let field = gf(20);
        assert!(field.tables.is_none());
        let a = Fel(0x5_4321);
        let b = Fel(0xa_bcde);
        assert_eq!(field.mul(a, b), field.mul(b, a));
        assert_eq!(field.mul(a, field.inv(a).unwrap()), Fel::ONE);
        assert_eq!(field.sqrt(field.square(b)), b);
        assert_eq!(field.pow(a, (1 << 20) - 1), Fel::ONE);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(15), vec![(3, 1), (5, 1)]);
        assert_eq!(
            factorize((1 << 24) - 1),
            vec![(3, 2), (5, 1), (7, 1), (13, 1), (17, 1), (241, 1)]
        );
        assert_eq!(factorize(7), vec![(7, 1)]);
    }

    #[test]
    fn frobenius_tables() {
        for f in [3, 8, 11, 20] {
            let field = gf(f);
            for i in 0..f {
                let map = field.frob_map(i);
                for bits in (0..field.order()).step_by(1 + (field.order() / 4096) as usize) {
                    let a = Fel(bits as u32);
                    assert_eq!(map.apply(a), field.frob(a, i));
                }
            }
        }
    }
}
