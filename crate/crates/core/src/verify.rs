//! Exact numeric checks of a representation against the input products.

use crate::drring::{
    eval_laurent_with, eval_product_range, eval_ratfunc, eval_z, z_function, ProductSpec,
};
use crate::error::{Error, Result};
use crate::lattice::RelationLattice;
use crate::numbers::GaussRat;
use crate::pipeline::{input_to_alphas, power_product, KernelGenerator, MinimalRepresentation};
use crate::poly::RatFunc;
use crate::sigmafact::sigma_quotient_solve;

/// Outcome of one checked identity over a range of indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub label: String,
    pub first: i64,
    pub last: i64,
    pub pass: bool,
    pub first_failure: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub products: Vec<CheckResult>,
    pub kernel: Vec<CheckResult>,
    pub pass: bool,
}

impl VerifyReport {
    fn finish(products: Vec<CheckResult>, kernel: Vec<CheckResult>) -> Self {
        let pass = products.iter().chain(&kernel).all(|c| c.pass);
        VerifyReport {
            products,
            kernel,
            pass,
        }
    }

    /// Combine a product report and a kernel report.
    pub fn merge(self, other: VerifyReport) -> Self {
        let mut products = self.products;
        products.extend(other.products);
        let mut kernel = self.kernel;
        kernel.extend(other.kernel);
        Self::finish(products, kernel)
    }
}

/// Input product values for `n` in `start..=end`, one vector per product.
fn product_table(spec: &ProductSpec, start: i64, end: i64) -> Vec<Vec<GaussRat>> {
    spec.products()
        .iter()
        .map(|p| eval_product_range(&p.f, p.lower, start, end))
        .collect()
}

fn spec_start(spec: &ProductSpec) -> Result<i64> {
    let mut start = 0;
    for p in spec.products() {
        start = start.max(p.lower).max(z_function(&p.f)?);
    }
    Ok(start)
}

/// First index at which a representation is checked: every input product,
/// generator and image coefficient is defined and nonzero from here on.
pub fn start_index(spec: &ProductSpec, rep: &MinimalRepresentation) -> Result<i64> {
    let mut start = spec_start(spec)?.max(rep.report.start);
    for pm in &rep.extension.pi_monomials {
        start = start.max(pm.lower);
    }
    for (_, img) in &rep.images {
        for t in &img.terms {
            start = start.max(z_function(&t.coef)?);
        }
    }
    Ok(start)
}

fn check_range(n_max: i64, start: i64) -> Result<()> {
    if n_max < start {
        return Err(Error::RangeTooSmall { n_max, start });
    }
    Ok(())
}

/// Checks `F_i(n) = image_i(n)` for every input product and `n` in `[start, n_max]`.
pub fn check_commutes(
    spec: &ProductSpec,
    rep: &MinimalRepresentation,
    n_max: i64,
) -> Result<VerifyReport> {
    if rep.images.len() != spec.len() {
        return Err(Error::Dimension(format!(
            "{} images for {} products",
            rep.images.len(),
            spec.len()
        )));
    }
    let s = rep.extension.pi_monomials.len();
    for (p, (name, img)) in spec.products().iter().zip(&rep.images) {
        if &p.name != name {
            return Err(Error::Dimension(format!(
                "image for `{name}` where `{}` was expected",
                p.name
            )));
        }
        if img.terms.iter().any(|t| t.exps.len() != s) {
            return Err(Error::Dimension(format!(
                "image of `{name}` is not over {s} generators"
            )));
        }
    }
    let start = start_index(spec, rep)?;
    check_range(n_max, start)?;

    let values = product_table(spec, start, n_max);
    let gens: Vec<Vec<GaussRat>> = rep
        .extension
        .pi_monomials
        .iter()
        .map(|pm| {
            eval_product_range(&pm.alpha.shift(-1), pm.lower, start, n_max)
                .into_iter()
                .map(|v| &v * &pm.kappa)
                .collect()
        })
        .collect();

    let mut results = Vec::with_capacity(spec.len());
    for (i, (name, img)) in rep.images.iter().enumerate() {
        let mut first_failure = None;
        for (idx, n) in (start..=n_max).enumerate() {
            let g: Vec<GaussRat> = gens.iter().map(|col| col[idx].clone()).collect();
            let ok = match eval_laurent_with(img, &g, &eval_z(&rep.extension, n), n) {
                Ok(v) => v == values[i][idx],
                Err(_) => false,
            };
            if !ok {
                first_failure = Some(n);
                break;
            }
        }
        results.push(CheckResult {
            label: name.clone(),
            first: start,
            last: n_max,
            pass: first_failure.is_none(),
            first_failure,
        });
    }
    Ok(VerifyReport::finish(results, Vec::new()))
}

/// Checks `prod_i F_i(n)^exps[i] = g(n)` for every generator and `n` in `[start, n_max]`.
pub fn check_kernel(
    spec: &ProductSpec,
    gens: &[KernelGenerator],
    n_max: i64,
) -> Result<VerifyReport> {
    let base = spec_start(spec)?;
    let mut starts = Vec::with_capacity(gens.len());
    for k in gens {
        if k.exps.len() != spec.len() {
            return Err(Error::Dimension(format!(
                "relation over {} products for {} inputs",
                k.exps.len(),
                spec.len()
            )));
        }
        if k.g.is_zero() {
            return Err(Error::ZeroArgument("check_kernel relation constant"));
        }
        starts.push(base.max(z_function(&k.g)?));
    }
    let start = starts.iter().copied().min().unwrap_or(base);
    check_range(n_max, starts.iter().copied().max().unwrap_or(base))?;
    let values = product_table(spec, start, n_max);

    let mut results = Vec::with_capacity(gens.len());
    for (gi, k) in gens.iter().enumerate() {
        let mut first_failure = None;
        for (idx, n) in (start..=n_max).enumerate() {
            if n < starts[gi] {
                continue;
            }
            let mut lhs = GaussRat::one();
            for (col, &e) in values.iter().zip(&k.exps) {
                lhs = &lhs * &col[idx].pow(e)?;
            }
            if lhs != eval_ratfunc(&k.g, n) {
                first_failure = Some(n);
                break;
            }
        }
        results.push(CheckResult {
            label: format!("relation {}", gi + 1),
            first: starts[gi],
            last: n_max,
            pass: first_failure.is_none(),
            first_failure,
        });
    }
    Ok(VerifyReport::finish(Vec::new(), results))
}

/// Whether `exps` lies in the relation lattice `m`; for members, also a
/// rational `g` with `g(x+1)/g(x) = prod alphahat_i^exps[i]`.
pub fn check_relation_candidate(
    spec: &ProductSpec,
    exps: &[i64],
    m: &RelationLattice,
) -> Result<(bool, Option<RatFunc>)> {
    if exps.len() != spec.len() {
        return Err(Error::Dimension(format!(
            "{} exponents for {} products",
            exps.len(),
            spec.len()
        )));
    }
    if !m.contains(exps)? {
        return Ok((false, None));
    }
    let w = power_product(&input_to_alphas(spec), exps)?;
    let g = sigma_quotient_solve(&w)?
        .ok_or_else(|| Error::Internal("lattice member without a shift-quotient witness".into()))?;
    Ok((true, Some(g)))
}
