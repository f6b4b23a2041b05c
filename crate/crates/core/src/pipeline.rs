//! From a list of products to a minimal representation: relation lattice,
//! Smith normal form, change of generators, root-of-unity and constant
//! fitting, images of the input products and relation generators.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::drring::{
    default_lower_bound, eval_product, eval_ratfunc, o_function, z_function, LaurentExpr,
    PiMonomial, ProductSpec, RPiExtension, RootOfUnity,
};
use crate::error::{Error, Result};
use crate::lattice::{
    kernel_with_congruence, smith_normal_form, IntMat, RelationLattice, SnfResult,
};
use crate::numbers::{ord_root_of_unity, unit_exponent_data, GaussRat};
use crate::poly::{Poly, RatFunc};
use crate::sigmafact::{joint_orbit_decompose, Factored};

/// `prod_i x_i^exps[i] - g`, a generator of the relations among the inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelGenerator {
    pub exps: Vec<i64>,
    pub g: RatFunc,
}

/// Intermediate data of a run, kept for inspection and reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub rank: usize,
    pub divisors: Vec<u32>,
    pub snf: Option<SnfResult>,
    pub m_basis: RelationLattice,
    pub transformed: Vec<RatFunc>,
    pub gbar: Vec<RatFunc>,
    pub constants: Vec<GaussRat>,
    pub nu: Vec<u32>,
    /// First index from which the representation is guaranteed to agree with
    /// the input products.
    pub start: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalRepresentation {
    pub extension: RPiExtension,
    /// Image of each input product, in input order.
    pub images: Vec<(String, LaurentExpr)>,
    pub kernel_gens: Vec<KernelGenerator>,
    pub report: Report,
}

impl MinimalRepresentation {
    pub fn image(&self, name: &str) -> Option<&LaurentExpr> {
        self.images.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }
}

/// Shifted multiplicands `f_i(x+1)`, so that `F_i(n+1) = alpha_i(n) F_i(n)`.
pub fn input_to_alphas(spec: &ProductSpec) -> Vec<RatFunc> {
    spec.products().iter().map(|p| p.f.shift(1)).collect()
}

/// Lattice of `n` with `prod alphas[i]^n[i] = g(x+1)/g(x)` for some rational `g`.
pub fn relation_module(alphas: &[RatFunc]) -> Result<RelationLattice> {
    let joint = joint_orbit_decompose(alphas)?;
    factored_relation_module(
        &joint.atoms,
        &(0..alphas.len())
            .map(|i| joint.factored(i))
            .collect::<Vec<_>>(),
    )
}

fn factored_relation_module(atoms: &[Poly], fs: &[Factored]) -> Result<RelationLattice> {
    let orbit_rows = fs
        .iter()
        .map(|f| f.orbit_sums().into_iter().map(BigInt::from).collect())
        .collect();
    let orbit_mat = IntMat::from_rows(atoms.len(), orbit_rows)?;
    let units: Vec<GaussRat> = fs.iter().map(|f| f.unit.clone()).collect();
    let (prime_mat, iotas) = unit_exponent_data(&units)?;
    kernel_with_congruence(&orbit_mat.hstack(&prime_mat)?, &iotas, &BigInt::from(4))
}

fn bigint_row(m: &IntMat, i: usize) -> Result<Vec<i64>> {
    m.row(i)
        .iter()
        .map(|v| v.to_i64().ok_or(Error::Overflow))
        .collect()
}

/// `prod_j alphas[j]^exps[j]`.
pub fn power_product(alphas: &[RatFunc], exps: &[i64]) -> Result<RatFunc> {
    let mut acc = RatFunc::one();
    for (a, &e) in alphas.iter().zip(exps) {
        if e != 0 {
            acc = &acc * &a.pow(e)?;
        }
    }
    Ok(acc)
}

/// New multiplicands `alpha_i = prod_j alphas[j]^(B^-1)[i][j]`.
pub fn transform_generators(alphas: &[RatFunc], snf: &SnfResult) -> Result<Vec<RatFunc>> {
    if snf.b_inv.cols() != alphas.len() {
        return Err(Error::Dimension(
            "transform matrix does not match the number of products".into(),
        ));
    }
    let joint = joint_orbit_decompose(alphas)?;
    let base: Vec<Factored> = (0..alphas.len()).map(|i| joint.factored(i)).collect();
    Ok(factored_transform(&base, snf)?
        .iter()
        .map(|f| joint.expand(f))
        .collect())
}

fn factored_transform(base: &[Factored], snf: &SnfResult) -> Result<Vec<Factored>> {
    (0..snf.b_inv.rows())
        .map(|i| Factored::power_product(base, &bigint_row(&snf.b_inv, i)?))
        .collect()
}

/// The monomial change of generators and its inverse as exponent matrices:
/// `mu(xhat_i) = prod_j x_j^mu[i][j]`, `mu_inv(x_i) = prod_j xhat_j^mu_inv[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub mu: IntMat,
    pub mu_inv: IntMat,
}

impl MonomialMap {
    /// Image of the monomial with exponent vector `exps` under `mu`.
    pub fn apply(&self, exps: &[i64]) -> Result<Vec<i64>> {
        apply_exponents(&self.mu, exps)
    }

    pub fn apply_inv(&self, exps: &[i64]) -> Result<Vec<i64>> {
        apply_exponents(&self.mu_inv, exps)
    }
}

fn apply_exponents(m: &IntMat, exps: &[i64]) -> Result<Vec<i64>> {
    let row = IntMat::from_rows(
        exps.len(),
        vec![exps.iter().map(|&e| BigInt::from(e)).collect()],
    )?;
    bigint_row(&row.mul(m)?, 0)
}

pub fn build_mu(snf: &SnfResult) -> MonomialMap {
    MonomialMap {
        mu: snf.b.clone(),
        mu_inv: snf.b_inv.clone(),
    }
}

/// Output of the construction for the diagonal case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCase {
    /// `gbar[i](x+1) = rho_i alpha_i(x) gbar[i](x)` for `i < u`.
    pub gbar: Vec<RatFunc>,
    /// `rho^nu[i] = rho_i`.
    pub nu: Vec<u32>,
    pub root: Option<RootOfUnity>,
}

impl SpecialCase {
    fn order(&self) -> u32 {
        self.root.as_ref().map_or(1, |r| r.order)
    }
}

/// Solve for the first `u = divisors.len()` transformed multiplicands, whose
/// relation lattice must be `diag(divisors)` padded with zeros.
pub fn special_case_construct(alphas: &[RatFunc], divisors: &[u32]) -> Result<SpecialCase> {
    let joint = joint_orbit_decompose(alphas)?;
    let fs: Vec<Factored> = (0..alphas.len()).map(|i| joint.factored(i)).collect();
    let (mut sc, gbar) = factored_special_case(&joint.atoms, &fs, divisors)?;
    sc.gbar = gbar.iter().map(|g| joint.expand(g)).collect();
    Ok(sc)
}

/// As [`special_case_construct`] on factored multiplicands; the solutions are
/// returned factored and `gbar` of the result is left empty.
fn factored_special_case(
    atoms: &[Poly],
    alphas: &[Factored],
    divisors: &[u32],
) -> Result<(SpecialCase, Vec<Factored>)> {
    let u = divisors.len();
    if u > alphas.len() {
        return Err(Error::Dimension("more divisors than multiplicands".into()));
    }
    let r = alphas.len();
    let diag: Vec<Vec<i64>> = (0..u)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { divisors[i] as i64 } else { 0 })
                .collect()
        })
        .collect();
    if !factored_relation_module(atoms, alphas)?.equals(&RelationLattice::from_rows(r, diag))? {
        return Err(Error::Internal(
            "transformed multiplicands do not have a diagonal relation lattice".into(),
        ));
    }
    let d = divisors.last().copied().unwrap_or(1);
    let mut gbar = Vec::with_capacity(u);
    let mut rhos = Vec::with_capacity(u);
    for (a, &di) in alphas.iter().zip(divisors) {
        let (rho_i, g) = a
            .radical_solve(if d == 1 { 1 } else { di })?
            .ok_or_else(|| {
                Error::Internal("no root of unity makes the multiplicand a shift quotient".into())
            })?;
        if d > 1 && ord_root_of_unity(&rho_i)? != di {
            return Err(Error::Internal(format!(
                "root of unity {rho_i} does not have order {di}"
            )));
        }
        gbar.push(g);
        rhos.push(rho_i);
    }
    if d == 1 {
        return Ok((
            SpecialCase {
                gbar: Vec::new(),
                nu: vec![0; u],
                root: None,
            },
            gbar,
        ));
    }
    let rho = rhos.last().expect("u >= 1 when d > 1").clone();
    let mut nu = Vec::with_capacity(u);
    for rho_i in &rhos {
        let v = (0..d)
            .find(|&v| rho.pow(v as i64).map(|p| &p == rho_i).unwrap_or(false))
            .ok_or_else(|| Error::Internal(format!("{rho_i} is not a power of {rho}")))?;
        nu.push(v);
    }
    Ok((
        SpecialCase {
            gbar: Vec::new(),
            nu,
            root: Some(RootOfUnity { rho, order: d }),
        },
        gbar,
    ))
}

/// `prod_j F_j(n)^row[j]`, the sequence of a transformed generator.
pub fn transformed_value(spec: &ProductSpec, row: &[i64], n: i64) -> Result<GaussRat> {
    let mut acc = GaussRat::one();
    for (p, &e) in spec.products().iter().zip(row) {
        if e == 0 {
            continue;
        }
        let v = eval_product(&p.f, p.lower, n);
        if v.is_zero() {
            return Err(Error::Evaluation {
                n,
                reason: format!("product `{}` vanishes", p.name),
            });
        }
        acc = &acc * &v.pow(e)?;
    }
    Ok(acc)
}

/// Number of extra points at which fitted constants are re-checked.
const CONSTANCY_CHECKS: i64 = 5;

fn z_to_power(root: &Option<RootOfUnity>, n: i64, e: u32) -> GaussRat {
    match root {
        Some(r) => {
            let k = (n.rem_euclid(r.order as i64) * e as i64).rem_euclid(r.order as i64);
            r.rho.pow(k).expect("rho is nonzero")
        }
        None => GaussRat::one(),
    }
}

/// Constants `c_i` with `prod_j F_j(n)^(B^-1)[i][j] = c_i gbar_i(n) rho^(n (d - nu_i))`,
/// fitted at `n0` and checked at the following points.
pub fn fit_constants(
    spec: &ProductSpec,
    snf: &SnfResult,
    sc: &SpecialCase,
    n0: i64,
) -> Result<Vec<GaussRat>> {
    let d = sc.order();
    let mut out = Vec::with_capacity(sc.gbar.len());
    for (i, g) in sc.gbar.iter().enumerate() {
        let row = bigint_row(&snf.b_inv, i)?;
        let zexp = (d - sc.nu[i]) % d;
        let ratio = |n: i64| -> Result<GaussRat> {
            let target = transformed_value(spec, &row, n)?;
            let base = &eval_ratfunc(g, n) * &z_to_power(&sc.root, n, zexp);
            target
                .checked_div(&base)
                .map_err(|_| Error::Internal(format!("solution vanishes at the fitting point {n}")))
        };
        let c = ratio(n0)?;
        for n in n0 + 1..=n0 + CONSTANCY_CHECKS {
            if ratio(n)? != c {
                return Err(Error::Internal(format!(
                    "fitted constant {} is not constant at n = {n}",
                    i + 1
                )));
            }
        }
        out.push(c);
    }
    Ok(out)
}

/// `kappa` such that the transformed sequence equals `kappa * prod_{k=lower}^n alpha(k-1)`,
/// fitted at `n0 >= lower - 1` and checked at the following points.
pub fn compute_kappa(
    spec: &ProductSpec,
    row: &[i64],
    alpha: &RatFunc,
    lower: i64,
    n0: i64,
) -> Result<GaussRat> {
    let ratio = |n: i64| -> Result<GaussRat> {
        let gen = (lower..=n).fold(GaussRat::one(), |acc, k| &acc * &eval_ratfunc(alpha, k - 1));
        transformed_value(spec, row, n)?
            .checked_div(&gen)
            .map_err(|_| Error::Internal(format!("generator vanishes at the fitting point {n}")))
    };
    let kappa = ratio(n0)?;
    for n in n0 + 1..=n0 + CONSTANCY_CHECKS {
        if ratio(n)? != kappa {
            return Err(Error::Internal(format!(
                "generator constant is not constant at n = {n}"
            )));
        }
    }
    Ok(kappa)
}

fn identity_representation(
    spec: &ProductSpec,
    alphas: Vec<RatFunc>,
) -> Result<MinimalRepresentation> {
    let r = spec.len();
    let pi_monomials = spec
        .products()
        .iter()
        .zip(&alphas)
        .map(|(p, a)| PiMonomial {
            alpha: a.clone(),
            lower: p.lower,
            kappa: GaussRat::one(),
        })
        .collect();
    let images = spec
        .products()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let exps = (0..r).map(|j| i64::from(i == j)).collect();
            (
                p.name.clone(),
                LaurentExpr::monomial(RatFunc::one(), exps, 0),
            )
        })
        .collect();
    let mut start = 0;
    for p in spec.products() {
        start = start.max(p.lower).max(z_function(&p.f)?);
    }
    Ok(MinimalRepresentation {
        extension: RPiExtension {
            pi_monomials,
            r_monomial: None,
        },
        images,
        kernel_gens: Vec::new(),
        report: Report {
            rank: 0,
            divisors: Vec::new(),
            snf: None,
            m_basis: RelationLattice::zero(r),
            transformed: alphas,
            gbar: Vec::new(),
            constants: Vec::new(),
            nu: Vec::new(),
            start,
        },
    })
}

/// Full minimal representation of the input products.
pub fn minimal_representation(spec: &ProductSpec) -> Result<MinimalRepresentation> {
    let alphas = input_to_alphas(spec);
    let m = relation_module(&alphas)?;
    if m.rank() == 0 {
        return identity_representation(spec, alphas);
    }
    let snf = smith_normal_form(m.basis());
    assemble(spec, alphas, m, snf)
}

/// As [`minimal_representation`] but with externally chosen unimodular
/// transforms. The rows `d_i * (B^-1)_i` must generate the relation lattice.
pub fn minimal_representation_with_snf(
    spec: &ProductSpec,
    snf: SnfResult,
) -> Result<MinimalRepresentation> {
    let alphas = input_to_alphas(spec);
    let m = relation_module(&alphas)?;
    let r = spec.len();
    if snf.b.rows() != r || snf.b.cols() != r || snf.b.mul(&snf.b_inv)? != IntMat::identity(r) {
        return Err(Error::Dimension(
            "B and B^-1 must be mutually inverse r x r matrices".into(),
        ));
    }
    let divisors = snf.divisors();
    let rows = divisors
        .iter()
        .enumerate()
        .map(|(i, d)| snf.b_inv.row(i).iter().map(|v| v * d).collect())
        .collect();
    let generated = RelationLattice::from_generators(r, &IntMat::from_rows(r, rows)?)?;
    if !generated.equals(&m)? {
        return Err(Error::Internal(
            "the supplied transforms do not generate the relation lattice".into(),
        ));
    }
    if m.rank() == 0 {
        return identity_representation(spec, alphas);
    }
    assemble(spec, alphas, m, snf)
}

fn assemble(
    spec: &ProductSpec,
    alphas: Vec<RatFunc>,
    m: RelationLattice,
    snf: SnfResult,
) -> Result<MinimalRepresentation> {
    let r = spec.len();
    let u = m.rank();
    let divisors: Vec<u32> = snf
        .divisors()
        .iter()
        .map(|d| d.to_u32().ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    if divisors.len() != u {
        return Err(Error::Internal(
            "number of invariant factors differs from the lattice rank".into(),
        ));
    }
    let joint = joint_orbit_decompose(&alphas)?;
    let base: Vec<Factored> = (0..r).map(|i| joint.factored(i)).collect();
    let transformed_f = factored_transform(&base, &snf)?;
    let transformed: Vec<RatFunc> = transformed_f.iter().map(|f| joint.expand(f)).collect();
    let (mut sc, gbar_f) = factored_special_case(&joint.atoms, &transformed_f, &divisors)?;
    sc.gbar = gbar_f.iter().map(|g| joint.expand(g)).collect();
    let d = sc.order();

    let mut pi_monomials = Vec::with_capacity(r - u);
    for a in &transformed[u..] {
        pi_monomials.push(PiMonomial {
            alpha: a.clone(),
            lower: default_lower_bound(a)?,
            kappa: GaussRat::one(),
        });
    }

    // first index from which every evaluation used below is defined and nonzero
    let mut start = 0i64;
    for (p, a) in spec.products().iter().zip(&alphas) {
        start = start
            .max(p.lower)
            .max(z_function(&p.f)?)
            .max(z_function(a)?);
    }
    for a in &transformed {
        start = start.max(z_function(a)?);
    }
    for pm in &pi_monomials {
        start = start.max(pm.lower);
    }
    for g in &sc.gbar {
        start = start.max(z_function(g)?).max(o_function(g)?);
    }
    let fit_at = start + 1;

    let constants = fit_constants(spec, &snf, &sc, fit_at)?;
    for (j, pm) in pi_monomials.iter_mut().enumerate() {
        let row = bigint_row(&snf.b_inv, u + j)?;
        pm.kappa = compute_kappa(spec, &row, &pm.alpha, pm.lower, fit_at)?;
    }

    // images: xhat_i -> prod_j lambda(x_j)^B[i][j]
    let scaled: Vec<Factored> = gbar_f
        .iter()
        .zip(&constants)
        .map(|(g, c)| g.scale(c))
        .collect();
    let mut images = Vec::with_capacity(r);
    let mut image_parts = Vec::with_capacity(r);
    for (i, p) in spec.products().iter().enumerate() {
        let row = bigint_row(&snf.b, i)?;
        let coef = Factored::power_product(&scaled, &row[..u])?;
        let zpow: i64 = row[..u]
            .iter()
            .zip(&sc.nu)
            .map(|(b, &nu)| b * i64::from((d - nu) % d))
            .sum();
        let zpow = zpow.rem_euclid(i64::from(d)) as u32;
        let exps = row[u..].to_vec();
        images.push((
            p.name.clone(),
            LaurentExpr::monomial(joint.expand(&coef), exps.clone(), zpow),
        ));
        image_parts.push((coef, exps, zpow));
    }

    // relation generators from the rows d_i (B^-1)_i
    let mut kernel_gens = Vec::with_capacity(u);
    for (i, &di) in divisors.iter().enumerate() {
        let n: Vec<i64> = bigint_row(&snf.b_inv, i)?
            .iter()
            .map(|v| v * i64::from(di))
            .collect();
        let mut coef = Factored::one(joint.atoms.len());
        let mut exps = vec![0i64; r - u];
        let mut zpow = 0i64;
        for (k, &nk) in n.iter().enumerate() {
            if nk == 0 {
                continue;
            }
            let (c, e, z) = &image_parts[k];
            coef = coef.mul(&c.pow(nk)?)?;
            for (acc, v) in exps.iter_mut().zip(e) {
                *acc += nk * v;
            }
            zpow += nk * i64::from(*z);
        }
        if exps.iter().any(|&e| e != 0) || zpow.rem_euclid(i64::from(d)) != 0 {
            return Err(Error::Internal(format!(
                "relation {} does not map to a constant",
                i + 1
            )));
        }
        let direct = scaled[i].pow(i64::from(di))?;
        if coef != direct {
            return Err(Error::Internal(format!(
                "relation {} disagrees with its direct construction",
                i + 1
            )));
        }
        kernel_gens.push(KernelGenerator {
            exps: n,
            g: joint.expand(&coef),
        });
    }

    Ok(MinimalRepresentation {
        extension: RPiExtension {
            pi_monomials,
            r_monomial: sc.root.clone(),
        },
        images,
        kernel_gens,
        report: Report {
            rank: u,
            divisors,
            snf: Some(snf),
            m_basis: m,
            transformed,
            gbar: sc.gbar,
            constants,
            nu: sc.nu,
            start,
        },
    })
}
