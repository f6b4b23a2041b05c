//! Univariate polynomials and rational functions over Q(i).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numbers::GaussRat;

/// Dense polynomial with ascending coefficients; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussRat>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(GaussRat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| GaussRat::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// The monic linear polynomial `x + c`.
    pub fn linear(c: i64) -> Self {
        Self::from_i64(&[c, 1])
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GaussRat {
        self.coeffs.get(i).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> GaussRat {
        self.coeffs.last().cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The monic associate (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lead().inv().expect("leading coefficient is nonzero");
        self.scale(&inv)
    }

    /// Split into leading coefficient and monic part.
    pub fn lead_and_monic(&self) -> (GaussRat, Poly) {
        (self.lead(), self.monic())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, v: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * v) + c;
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> GaussRat {
        self.eval(&GaussRat::from_int(n))
    }

    /// `p(x + j)`.
    pub fn shift(&self, j: i64) -> Poly {
        if j == 0 || self.is_constant() {
            return self.clone();
        }
        self.compose_linear(&GaussRat::from_int(j))
    }

    /// `p(x + c)` by Horner's scheme.
    pub fn compose_linear(&self, c: &GaussRat) -> Poly {
        let lin = Poly::from_coeffs(vec![c.clone(), GaussRat::one()]);
        let mut acc = Poly::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(a.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigInt::from(i)))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = d.lead().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![GaussRat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        match self.divrem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Real and imaginary coefficient parts: `self = re + i*im`.
    pub fn split_re_im(&self) -> (Poly, Poly) {
        let re = self.coeffs.iter().map(|c| {
            let (n, d) = c.real_part();
            GaussRat::new(n, BigInt::zero(), d).expect("denominator is positive")
        });
        let im = self.coeffs.iter().map(|c| {
            let (n, d) = c.imag_part();
            GaussRat::new(n, BigInt::zero(), d).expect("denominator is positive")
        });
        (
            Poly::from_coeffs(re.collect()),
            Poly::from_coeffs(im.collect()),
        )
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd_monic(p: &Poly, q: &Poly) -> Poly {
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.divrem(&b).expect("divisor is nonzero");
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Square-free decomposition `p = lead * prod a_i^i` (Yun's algorithm).
///
/// Returns the monic, pairwise coprime factors `a_i` that are not constant,
/// paired with their multiplicity.
pub fn squarefree(p: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let a0 = gcd_monic(&p, &dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let mut c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd_monic(&b, &d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// All integers `n` with `p(n) = 0`.
pub fn integer_roots(p: &Poly) -> Result<BTreeSet<i64>> {
    if p.is_zero() {
        return Err(Error::ZeroArgument("integer_roots"));
    }
    let (re, im) = p.split_re_im();
    // an integer root is a common root of the real and imaginary parts
    let g = if im.is_zero() {
        re
    } else if re.is_zero() {
        im
    } else {
        gcd_monic(&re, &im)
    };
    rational_poly_integer_roots(&g)
}

/// Integer roots of a polynomial whose coefficients are all real.
fn rational_poly_integer_roots(p: &Poly) -> Result<BTreeSet<i64>> {
    let mut roots = BTreeSet::new();
    if p.is_constant() {
        return Ok(roots);
    }
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.den()));
    let mut ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.num_re() * &lcm / c.den())
        .collect();
    let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.insert(0);
        ints.drain(..lead_zeros);
    }
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let a0 = ints[0].abs();
    let bound = root_bound(&ints);
    let mut d = BigInt::one();
    while d <= bound && d <= a0 {
        if a0.is_multiple_of(&d) {
            for cand in [d.clone(), -d.clone()] {
                if eval_int_poly(&ints, &cand).is_zero() {
                    roots.insert(cand.to_i64().ok_or(Error::Overflow)?);
                }
            }
        }
        d += 1;
    }
    Ok(roots)
}

fn eval_int_poly(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

/// Fujiwara-type bound: every root satisfies `|z| <= 2 * B` where `B` is the
/// smallest integer with `B^i * |a_n| >= |a_{n-i}|` for all `i`.
fn root_bound(c: &[BigInt]) -> BigInt {
    let n = c.len() - 1;
    let lead = c[n].abs();
    let mut b = BigInt::one();
    for i in 1..=n {
        let target = c[n - i].abs();
        while num_traits::pow(b.clone(), i) * &lead < target {
            b *= 2;
        }
    }
    b * 2
}

/// `Res_x(p(x), q(x + t))` as a polynomial in `t`, computed as the determinant
/// of the Sylvester matrix with entries in Q(i)[t] by fraction-free elimination.
pub fn resultant_in_shift(p: &Poly, q: &Poly) -> Poly {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Poly::zero();
    };
    if m == 0 && n == 0 {
        return Poly::one();
    }
    // coefficient of x^k in q(x+t): sum_{i>=k} q_i * C(i,k) * t^(i-k)
    let q_shift: Vec<Poly> = (0..=n)
        .map(|k| Poly::from_coeffs((k..=n).map(|i| q.coeff(i).scale(&binomial(i, k))).collect()))
        .collect();
    let size = m + n;
    let mut mat = vec![vec![Poly::zero(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + m - k] = Poly::constant(p.coeff(k));
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + n - k] = q_shift[k].clone();
        }
    }
    bareiss_det(mat)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// `{ j : deg gcd(p(x), q(x+j)) > 0 }`.
pub fn dispersion_set(p: &Poly, q: &Poly) -> BTreeSet<i64> {
    if p.is_constant() || q.is_constant() {
        return BTreeSet::new();
    }
    let res = resultant_in_shift(p, q);
    integer_roots(&res).expect("resultant in the shift parameter is a nonzero polynomial")
}

/// A rational function `unit * num / den` with `num`, `den` monic and coprime.
///
/// Zero is stored as unit `0` over `1 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    unit: GaussRat,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd_monic(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let (ln, num) = num.lead_and_monic();
        let (ld, den) = den.lead_and_monic();
        Ok(RatFunc {
            unit: ln.checked_div(&ld)?,
            num,
            den,
        })
    }

    /// Assemble from parts already known to be monic and coprime.
    pub fn from_parts(unit: GaussRat, num: Poly, den: Poly) -> Self {
        debug_assert!(num.lead().is_one() && den.lead().is_one());
        if unit.is_zero() {
            return Self::zero();
        }
        RatFunc { unit, num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            unit: GaussRat::zero(),
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        RatFunc {
            unit: c,
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, Poly::one()).expect("denominator is one")
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn unit(&self) -> &GaussRat {
        &self.unit
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.unit.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in Q(i).
    pub fn is_constant(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Numerator including the unit: `unit * num`.
    pub fn full_num(&self) -> Poly {
        self.num.scale(&self.unit)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc {
            unit: self.unit.inv()?,
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e32 = u32::try_from(e).map_err(|_| Error::Overflow)?;
        if self.is_zero() {
            return Ok(if e == 0 { Self::one() } else { Self::zero() });
        }
        Ok(RatFunc {
            unit: self.unit.pow(e)?,
            num: self.num.pow(e32),
            den: self.den.pow(e32),
        })
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            unit: &self.unit * c,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// `f(x + j)`.
    pub fn shift(&self, j: i64) -> Self {
        RatFunc {
            unit: self.unit.clone(),
            num: self.num.shift(j),
            den: self.den.shift(j),
        }
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cancel across the two fractions only; each is already reduced
        let g1 = gcd_monic(&self.num, &rhs.den);
        let g2 = gcd_monic(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc {
            unit: &self.unit * &rhs.unit,
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.full_num() * &rhs.den) + &(&rhs.full_num() * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("denominators are nonzero")
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            unit: -&self.unit,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * ({}) / ({})", self.unit, self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lin_prod(roots: &[i64]) -> Poly {
        roots
            .iter()
            .fold(Poly::one(), |acc, &r| &acc * &Poly::linear(-r))
    }

    #[test]
    fn arithmetic() {
        assert_eq!(
            &Poly::linear(1) * &Poly::linear(-1),
            Poly::from_i64(&[-1, 0, 1])
        );
        let (q, r) = Poly::from_i64(&[1, 0, 1]).divrem(&Poly::x()).unwrap();
        assert_eq!(q, Poly::x());
        assert_eq!(r, Poly::one());
        assert_eq!(Poly::x().divrem(&Poly::zero()), Err(Error::DivisionByZero));
        let p = Poly::from_i64(&[1, 0, 1]);
        assert_eq!(p.monic(), p);
    }

    #[test]
    fn shifts() {
        assert_eq!(Poly::x().shift(1), Poly::linear(1));
        assert_eq!(Poly::linear(4).pow(3).shift(-1), Poly::linear(3).pow(3));
        assert_eq!(
            Poly::from_i64(&[0, 0, 1]).shift(2),
            Poly::from_i64(&[4, 4, 1])
        );
    }

    #[test]
    fn gcds() {
        assert_eq!(
            gcd_monic(&Poly::from_i64(&[-1, 0, 1]), &Poly::linear(-1)),
            Poly::linear(-1)
        );
        assert_eq!(gcd_monic(&Poly::x(), &Poly::linear(1)), Poly::one());
        let a = &Poly::linear(1).pow(2) * &Poly::linear(3);
        let b = &Poly::linear(1) * &Poly::linear(5);
        let g = gcd_monic(&a, &b);
        assert_eq!(g, Poly::linear(1));
        assert!(a.div_exact(&g).is_some() && b.div_exact(&g).is_some());
    }

    #[test]
    fn squarefree_parts() {
        let p = (&Poly::linear(1).pow(3) * &Poly::linear(2)).scale(&GaussRat::from_int(7));
        let sf = squarefree(&p);
        assert_eq!(sf, vec![(Poly::linear(2), 1), (Poly::linear(1), 3)]);
    }

    #[test]
    fn integer_root_examples() {
        assert_eq!(
            integer_roots(&lin_prod(&[0, -3])).unwrap(),
            BTreeSet::from([0, -3])
        );
        assert!(integer_roots(&Poly::from_i64(&[1, 0, 1]))
            .unwrap()
            .is_empty());
        let x2_minus_i = Poly::from_coeffs(vec![-GaussRat::i(), GaussRat::zero(), GaussRat::one()]);
        let p = &Poly::linear(-2) * &x2_minus_i;
        assert_eq!(integer_roots(&p).unwrap(), BTreeSet::from([2]));
        for n in -10..=10 {
            assert_eq!(p.eval_int(n).is_zero(), n == 2);
        }
        assert!(integer_roots(&Poly::zero()).is_err());
        // large constant term, roots far apart
        let p = lin_prod(&[-100, 37, 0]).scale(&GaussRat::ratio(3, 7));
        assert_eq!(integer_roots(&p).unwrap(), BTreeSet::from([-100, 0, 37]));
    }

    fn brute_dispersion(p: &Poly, q: &Poly, range: i64) -> BTreeSet<i64> {
        (-range..=range)
            .filter(|&j| !gcd_monic(p, &q.shift(j)).is_constant())
            .collect()
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion_set(&Poly::x(), &Poly::x()), BTreeSet::from([0]));
        assert_eq!(
            dispersion_set(&Poly::x(), &Poly::linear(3)),
            BTreeSet::from([-3])
        );
        let p = &Poly::linear(1) * &Poly::linear(3);
        let q = Poly::linear(6);
        assert_eq!(dispersion_set(&p, &q), BTreeSet::from([-5, -3]));
        assert_eq!(dispersion_set(&p, &q), brute_dispersion(&p, &q, 10));
        assert!(dispersion_set(&Poly::one(), &q).is_empty());
        // irreducible quadratic factors
        let a = Poly::from_i64(&[1, 0, 1]);
        assert_eq!(dispersion_set(&a, &a.shift(4)), BTreeSet::from([-4]));
    }

    #[test]
    fn resultant_matches_product_of_root_differences() {
        // Res(x - a, x + t - b) = t + a - b ... up to the Sylvester sign convention
        let r = resultant_in_shift(&Poly::linear(-2), &Poly::linear(-5));
        assert_eq!(integer_roots(&r).unwrap(), BTreeSet::from([3]));
        assert_eq!(r.degree(), Some(1));
    }

    #[test]
    fn ratfunc_canonical() {
        let a = RatFunc::new(Poly::from_i64(&[-1, 0, 1]), Poly::linear(-1)).unwrap();
        assert_eq!(a, RatFunc::from_poly(Poly::linear(1)));
        let b = RatFunc::new(Poly::from_i64(&[2, 2]), Poly::from_i64(&[4, 4, 0])).unwrap();
        assert_eq!(b, RatFunc::constant(GaussRat::ratio(1, 2)));
        let c = RatFunc::new(Poly::from_i64(&[0, -3]), Poly::from_i64(&[2, 6])).unwrap();
        assert_eq!(c.unit(), &GaussRat::ratio(-1, 2));
        assert_eq!(c.num(), &Poly::x());
        assert_eq!(
            c.den(),
            &Poly::from_coeffs(vec![GaussRat::ratio(1, 3), GaussRat::one()])
        );
        assert!(RatFunc::new(Poly::x(), Poly::zero()).is_err());
        assert!(RatFunc::new(Poly::zero(), Poly::x()).unwrap().is_zero());
    }

    #[test]
    fn ratfunc_ops() {
        let f = RatFunc::new(Poly::linear(6).pow(2), Poly::linear(4).pow(2)).unwrap();
        let g = f.inv().unwrap();
        assert!((&f * &g).is_one());
        assert_eq!(f.shift(-2).shift(2), f);
        let h = &f - &f;
        assert!(h.is_zero());
        assert_eq!(&(&f + &RatFunc::one()) - &RatFunc::one(), f);
        assert_eq!(f.pow(-2).unwrap(), g.pow(2).unwrap());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-5i64..=5, 1..5).prop_map(|c| Poly::from_i64(&c))
    }

    fn root_list() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-10i64..=10, 1..4)
    }

    proptest! {
        #[test]
        fn shift_composes(p in small_poly(), a in -6i64..=6, b in -6i64..=6) {
            prop_assert_eq!(p.shift(a).shift(b), p.shift(a + b));
        }

        #[test]
        fn gcd_contains_common_factor(p in small_poly(), q in small_poly(), g in small_poly()) {
            prop_assume!(!g.is_zero() && !(p.is_zero() && q.is_zero()));
            let d = gcd_monic(&(&p * &g), &(&q * &g));
            prop_assert!(d.div_exact(&g.monic()).is_some());
        }

        #[test]
        fn dispersion_against_brute_force(a in root_list(), b in root_list()) {
            let p = lin_prod(&a);
            let q = lin_prod(&b);
            prop_assert_eq!(dispersion_set(&p, &q), brute_dispersion(&p, &q, 25));
        }

        #[test]
        fn integer_roots_against_evaluation(a in root_list(), extra in small_poly()) {
            prop_assume!(!extra.is_zero());
            let p = &lin_prod(&a) * &extra;
            let found = integer_roots(&p).unwrap();
            let expected: BTreeSet<i64> = (-40..=40).filter(|&n| p.eval_int(n).is_zero()).collect();
            prop_assert_eq!(found, expected);
        }

        #[test]
        fn ratfunc_canonical_form_unique(p in small_poly(), q in small_poly(), g in small_poly()) {
            prop_assume!(!q.is_zero() && !g.is_zero());
            let f1 = RatFunc::new(p.clone(), q.clone()).unwrap();
            let f2 = RatFunc::new(&p * &g, &q * &g).unwrap();
            prop_assert_eq!(f1, f2);
        }
    }
}
