//! Product specifications, Laurent expressions over product generators, and
//! the evaluation of rational functions, products and expressions at integers.

use crate::error::{Error, Result};
use crate::numbers::GaussRat;
use crate::poly::{integer_roots, Poly, RatFunc};

/// One input product `prod_{k=lower}^n f(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDef {
    pub name: String,
    pub f: RatFunc,
    pub lower: i64,
}

/// A validated, ordered list of products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    products: Vec<ProductDef>,
}

impl ProductSpec {
    /// Checks that every factor `f(k)`, `k >= lower`, is defined and nonzero.
    pub fn new(products: Vec<ProductDef>) -> Result<Self> {
        if products.is_empty() {
            return Err(Error::EmptySpec);
        }
        for (i, p) in products.iter().enumerate() {
            if products[..i].iter().any(|q| q.name == p.name) {
                return Err(Error::DuplicateName(p.name.clone()));
            }
            if p.lower < 0 {
                return Err(Error::NegativeLowerBound {
                    name: p.name.clone(),
                    lower: p.lower,
                });
            }
            if p.f.is_zero() {
                return Err(Error::ZeroMultiplicand(p.name.clone()));
            }
            let roots = integer_roots(p.f.num())?
                .into_iter()
                .chain(integer_roots(p.f.den())?);
            if let Some(root) = roots.filter(|&r| r >= p.lower).max() {
                return Err(Error::InvalidProduct {
                    name: p.name.clone(),
                    root,
                    lower: p.lower,
                });
            }
        }
        Ok(ProductSpec { products })
    }

    pub fn products(&self) -> &[ProductDef] {
        &self.products
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }
}

/// One term `coef * prod x_j^exps[j] * z^zpow`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: RatFunc,
    pub exps: Vec<i64>,
    pub zpow: u32,
}

/// A finite sum of terms in the Laurent polynomial ring over the generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentExpr {
    pub terms: Vec<Term>,
}

impl LaurentExpr {
    /// Sum of the given terms with equal monomials merged and zeros dropped.
    pub fn from_terms(terms: Vec<Term>) -> Self {
        let mut out: Vec<Term> = Vec::new();
        for t in terms {
            match out
                .iter_mut()
                .find(|u| u.exps == t.exps && u.zpow == t.zpow)
            {
                Some(u) => u.coef = &u.coef + &t.coef,
                None => out.push(t),
            }
        }
        out.retain(|t| !t.coef.is_zero());
        LaurentExpr { terms: out }
    }

    pub fn monomial(coef: RatFunc, exps: Vec<i64>, zpow: u32) -> Self {
        Self::from_terms(vec![Term { coef, exps, zpow }])
    }
}

/// A generator `t` with `t(x+1) = alpha(x) t(x)`, evaluating to
/// `kappa * prod_{k=lower}^n alpha(k-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMonomial {
    pub alpha: RatFunc,
    pub lower: i64,
    pub kappa: GaussRat,
}

/// A generator `z` with `z(x+1) = rho z(x)`, `z^order = 1`, evaluating to `rho^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOfUnity {
    pub rho: GaussRat,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RPiExtension {
    pub pi_monomials: Vec<PiMonomial>,
    pub r_monomial: Option<RootOfUnity>,
}

impl RPiExtension {
    /// Order of the root-of-unity generator, or 1 when there is none.
    pub fn z_order(&self) -> u32 {
        self.r_monomial.as_ref().map_or(1, |r| r.order)
    }
}

/// `f(n)`, or 0 when `n` is a pole of `f`.
pub fn eval_ratfunc(f: &RatFunc, n: i64) -> GaussRat {
    let d = f.den().eval_int(n);
    if d.is_zero() {
        return GaussRat::zero();
    }
    let v = &f.num().eval_int(n) * f.unit();
    v.checked_div(&d).expect("denominator value is nonzero")
}

/// One more than the largest nonnegative integer root, or 0 if there is none.
fn bound_past_roots(p: &Poly) -> Result<i64> {
    Ok(integer_roots(p)?
        .into_iter()
        .filter(|&r| r >= 0)
        .max()
        .map_or(0, |r| r + 1))
}

/// Smallest `l` such that `f(n)` is defined for all `n >= l`.
pub fn o_function(f: &RatFunc) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroArgument("o_function"));
    }
    bound_past_roots(f.den())
}

/// Smallest `l` such that `f(n)` is defined and nonzero for all `n >= l`.
pub fn z_function(f: &RatFunc) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroArgument("z_function"));
    }
    Ok(bound_past_roots(f.num())?.max(bound_past_roots(f.den())?))
}

/// `prod_{k=lower}^n f(k)`; the empty product is 1.
pub fn eval_product(f: &RatFunc, lower: i64, n: i64) -> GaussRat {
    (lower..=n).fold(GaussRat::one(), |acc, k| &acc * &eval_ratfunc(f, k))
}

/// `[prod_{k=lower}^n f(k) for n in start..=end]`, computed incrementally.
pub fn eval_product_range(f: &RatFunc, lower: i64, start: i64, end: i64) -> Vec<GaussRat> {
    let mut acc = eval_product(f, lower, start - 1);
    (start..=end)
        .map(|n| {
            if n >= lower {
                acc = &acc * &eval_ratfunc(f, n);
            }
            acc.clone()
        })
        .collect()
}

/// Value of the Π-generator `gen` at `n`.
pub fn eval_generator(ext: &RPiExtension, gen: usize, n: i64) -> GaussRat {
    let m = &ext.pi_monomials[gen];
    let prod = (m.lower..=n).fold(GaussRat::one(), |acc, k| {
        &acc * &eval_ratfunc(&m.alpha, k - 1)
    });
    &m.kappa * &prod
}

/// Value of the root-of-unity generator at `n`.
pub fn eval_z(ext: &RPiExtension, n: i64) -> GaussRat {
    match &ext.r_monomial {
        Some(r) => r
            .rho
            .pow(n.rem_euclid(r.order as i64))
            .expect("rho is nonzero"),
        None => GaussRat::one(),
    }
}

/// Value of `expr` at `n` given precomputed generator values.
pub fn eval_laurent_with(
    expr: &LaurentExpr,
    gens: &[GaussRat],
    z: &GaussRat,
    n: i64,
) -> Result<GaussRat> {
    let mut total = GaussRat::zero();
    for t in &expr.terms {
        if t.exps.len() != gens.len() {
            return Err(Error::Dimension(format!(
                "term over {} generators evaluated with {} generator values",
                t.exps.len(),
                gens.len()
            )));
        }
        let mut v = eval_ratfunc(&t.coef, n);
        for (g, &e) in gens.iter().zip(&t.exps) {
            if e < 0 && g.is_zero() {
                return Err(Error::Evaluation {
                    n,
                    reason: "generator vanishes under a negative exponent".into(),
                });
            }
            v = &v * &g.pow(e)?;
        }
        v = &v * &z.pow(t.zpow as i64)?;
        total = &total + &v;
    }
    Ok(total)
}

pub fn eval_laurent(expr: &LaurentExpr, ext: &RPiExtension, n: i64) -> Result<GaussRat> {
    let gens: Vec<GaussRat> = (0..ext.pi_monomials.len())
        .map(|i| eval_generator(ext, i, n))
        .collect();
    eval_laurent_with(expr, &gens, &eval_z(ext, n), n)
}

/// First index from which every factor `alpha(k-1)` of a generator is defined
/// and nonzero.
pub fn default_lower_bound(alpha: &RatFunc) -> Result<i64> {
    Ok(z_function(alpha)? + 1)
}
