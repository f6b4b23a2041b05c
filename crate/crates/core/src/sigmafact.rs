//! Shift-orbit factorization of rational functions and solving `g(x+1) = w(x) g(x)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numbers::{roots_of_unity, GaussRat};
use crate::poly::{dispersion_set, gcd_monic, squarefree, Poly, RatFunc};

/// One shift orbit: `prod_k h(x+k)^exps[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitAtom {
    pub h: Poly,
    pub exps: BTreeMap<i64, i64>,
}

/// `unit * prod_atoms prod_k h(x+k)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub unit: GaussRat,
    pub atoms: Vec<OrbitAtom>,
}

impl OrbitDecomposition {
    pub fn reconstruct(&self) -> RatFunc {
        let tables: Vec<(Poly, BTreeMap<i64, i64>)> = self
            .atoms
            .iter()
            .map(|a| (a.h.clone(), a.exps.clone()))
            .collect();
        assemble(&self.unit, tables.iter().map(|(h, e)| (h, e)))
    }
}

/// Decompositions of several rational functions over one shared atom list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDecomposition {
    /// Orbit representatives, pairwise shift-coprime.
    pub atoms: Vec<Poly>,
    /// Unit part of each input.
    pub units: Vec<GaussRat>,
    /// `tables[i][a]` maps shift to exponent of `atoms[a]` in input `i`.
    pub tables: Vec<Vec<BTreeMap<i64, i64>>>,
}

impl JointDecomposition {
    /// The decomposition of input `i`, listing only atoms that occur in it.
    pub fn decomposition(&self, i: usize) -> OrbitDecomposition {
        let atoms = self
            .atoms
            .iter()
            .zip(&self.tables[i])
            .filter(|(_, e)| !e.is_empty())
            .map(|(h, e)| OrbitAtom {
                h: h.clone(),
                exps: e.clone(),
            })
            .collect();
        OrbitDecomposition {
            unit: self.units[i].clone(),
            atoms,
        }
    }

    /// Per-atom exponent sums of input `i`.
    pub fn orbit_sums(&self, i: usize) -> Vec<i64> {
        self.tables[i].iter().map(|e| e.values().sum()).collect()
    }
}

fn assemble<'a>(
    unit: &GaussRat,
    tables: impl Iterator<Item = (&'a Poly, &'a BTreeMap<i64, i64>)>,
) -> RatFunc {
    let mut num = Poly::one();
    let mut den = Poly::one();
    for (h, exps) in tables {
        for (&k, &e) in exps {
            let p = h.shift(k).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
    }
    // distinct shifts of shift-coprime atoms are coprime
    RatFunc::from_parts(unit.clone(), num, den)
}

/// Sort key giving a deterministic atom order independent of refinement order.
fn poly_key(p: &Poly) -> (usize, Vec<(BigInt, BigInt, BigInt)>) {
    let coeffs = p
        .coeffs()
        .iter()
        .rev()
        .map(|c| (c.num_re().clone(), c.num_im().clone(), c.den().clone()))
        .collect();
    (p.coeffs().len(), coeffs)
}

struct Refiner {
    cache: HashMap<(Poly, Poly), BTreeSet<i64>>,
}

impl Refiner {
    fn dispersion(&mut self, a: &Poly, b: &Poly) -> BTreeSet<i64> {
        self.cache
            .entry((a.clone(), b.clone()))
            .or_insert_with(|| dispersion_set(a, b))
            .clone()
    }

    /// Find one splitting step in `set`, if any is needed.
    fn find_split(&mut self, set: &[Poly]) -> Option<(usize, Vec<Poly>, usize, Vec<Poly>)> {
        for i in 0..set.len() {
            for j in i..set.len() {
                let (a, b) = (&set[i], &set[j]);
                for s in self.dispersion(a, b) {
                    if i == j && s == 0 {
                        continue;
                    }
                    let g = gcd_monic(a, &b.shift(s));
                    let deg = g.degree().unwrap_or(0);
                    if i != j && deg == a.degree().unwrap_or(0) && deg == b.degree().unwrap_or(0) {
                        // a(x) = b(x+s): same orbit, nothing to split
                        continue;
                    }
                    let split = |p: &Poly, f: &Poly| -> Vec<Poly> {
                        let rest = p.div_exact(f).expect("gcd divides");
                        [f.clone(), rest]
                            .into_iter()
                            .filter(|q| !q.is_constant())
                            .collect()
                    };
                    if i == j {
                        return Some((i, split(a, &g), j, Vec::new()));
                    }
                    return Some((i, split(a, &g), j, split(b, &g.shift(-s))));
                }
            }
        }
        None
    }
}

/// Decompose all inputs over one list of pairwise shift-coprime atoms.
pub fn joint_orbit_decompose(fs: &[RatFunc]) -> Result<JointDecomposition> {
    if fs.iter().any(RatFunc::is_zero) {
        return Err(Error::ZeroArgument("joint_orbit_decompose"));
    }
    let mut set: Vec<Poly> = Vec::new();
    let push = |p: Poly, set: &mut Vec<Poly>| {
        if !set.contains(&p) {
            set.push(p);
        }
    };
    for f in fs {
        for (p, _) in squarefree(f.num()).into_iter().chain(squarefree(f.den())) {
            push(p, &mut set);
        }
    }

    let mut refiner = Refiner {
        cache: HashMap::new(),
    };
    while let Some((i, a_parts, j, b_parts)) = refiner.find_split(&set) {
        let mut next: Vec<Poly> = Vec::new();
        for (k, p) in set.iter().enumerate() {
            if k == i {
                for q in &a_parts {
                    push(q.clone(), &mut next);
                }
            } else if k == j && !b_parts.is_empty() {
                for q in &b_parts {
                    push(q.clone(), &mut next);
                }
            } else if k != j || i == j {
                push(p.clone(), &mut next);
            }
        }
        set = next;
    }
    set.sort_by_key(poly_key);

    // union of shift-equivalent elements; offset[k] with set[k] = base(x + offset[k])
    let n = set.len();
    let mut orbit_of: Vec<Option<usize>> = vec![None; n];
    let mut offset = vec![0i64; n];
    let mut bases: Vec<usize> = Vec::new();
    for i in 0..n {
        if orbit_of[i].is_some() {
            continue;
        }
        let o = bases.len();
        bases.push(i);
        orbit_of[i] = Some(o);
        for j in i + 1..n {
            if orbit_of[j].is_some() {
                continue;
            }
            // set[j](x) = set[i](x + s)  <=>  s in dispersion(set[j], set[i])
            if let Some(&s) = refiner.dispersion(&set[j], &set[i]).iter().next() {
                orbit_of[j] = Some(o);
                offset[j] = s;
            }
        }
    }
    let mut min_off = vec![i64::MAX; bases.len()];
    for k in 0..n {
        let o = orbit_of[k].expect("every element is assigned");
        min_off[o] = min_off[o].min(offset[k]);
    }
    let atoms: Vec<Poly> = bases
        .iter()
        .enumerate()
        .map(|(o, &b)| set[b].shift(min_off[o]))
        .collect();
    // members as (orbit, shift relative to the representative)
    let members: Vec<(usize, i64, &Poly)> = (0..n)
        .map(|k| {
            let o = orbit_of[k].expect("every element is assigned");
            (o, offset[k] - min_off[o], &set[k])
        })
        .collect();

    let mut units = Vec::with_capacity(fs.len());
    let mut tables = Vec::with_capacity(fs.len());
    for f in fs {
        let mut table = vec![BTreeMap::new(); atoms.len()];
        for (poly, sign) in [(f.num(), 1i64), (f.den(), -1i64)] {
            let mut rest = poly.clone();
            for &(o, s, m) in &members {
                while let Some(q) = rest.div_exact(m) {
                    rest = q;
                    *table[o].entry(s).or_insert(0) += sign;
                }
            }
            if !rest.is_one() {
                return Err(Error::Internal(format!(
                    "orbit basis does not cover factor {rest}"
                )));
            }
        }
        for t in table.iter_mut() {
            t.retain(|_, e| *e != 0);
        }
        units.push(f.unit().clone());
        tables.push(table);
    }
    Ok(JointDecomposition {
        atoms,
        units,
        tables,
    })
}

/// Orbit decomposition of a single rational function.
pub fn orbit_decompose(f: &RatFunc) -> Result<OrbitDecomposition> {
    Ok(joint_orbit_decompose(std::slice::from_ref(f))?.decomposition(0))
}

/// `g(x+1) / g(x)`.
pub fn sigma_quotient(g: &RatFunc) -> Result<RatFunc> {
    g.shift(1).checked_div(g)
}

/// A rational `g` with `g(x+1) = w(x) g(x)` and unit 1, if one exists.
pub fn sigma_quotient_solve(w: &RatFunc) -> Result<Option<RatFunc>> {
    let joint = joint_orbit_decompose(std::slice::from_ref(w))?;
    Ok(joint
        .factored(0)
        .sigma_quotient_solve()
        .map(|g| joint.expand(&g)))
}

/// First root of unity `rho` (in the order 1, -1, i, -i) with `rho^m = 1` such
/// that `g(x+1) = rho * a(x) * g(x)` has a rational solution.
pub fn radical_solve(a: &RatFunc, m: u32) -> Result<Option<(GaussRat, RatFunc)>> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("radical_solve"));
    }
    let joint = joint_orbit_decompose(std::slice::from_ref(a))?;
    Ok(joint
        .factored(0)
        .radical_solve(m)?
        .map(|(rho, g)| (rho, joint.expand(&g))))
}

/// `unit * prod_a prod_k atoms[a](x+k)^tables[a][k]` over the atom list of a
/// [`JointDecomposition`]. Products and powers never expand polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub unit: GaussRat,
    pub tables: Vec<BTreeMap<i64, i64>>,
}

impl Factored {
    pub fn one(atoms: usize) -> Self {
        Factored {
            unit: GaussRat::one(),
            tables: vec![BTreeMap::new(); atoms],
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        Factored {
            unit: &self.unit * c,
            tables: self.tables.clone(),
        }
    }

    pub fn mul(&self, other: &Factored) -> Result<Self> {
        if self.tables.len() != other.tables.len() {
            return Err(Error::Dimension(
                "factored values over different atom lists".into(),
            ));
        }
        let mut tables = self.tables.clone();
        for (t, o) in tables.iter_mut().zip(&other.tables) {
            for (&k, &e) in o {
                *t.entry(k).or_insert(0) += e;
            }
            t.retain(|_, e| *e != 0);
        }
        Ok(Factored {
            unit: &self.unit * &other.unit,
            tables,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Factored::one(self.tables.len()));
        }
        let tables = self
            .tables
            .iter()
            .map(|t| {
                t.iter()
                    .map(|(&k, &v)| v.checked_mul(e).map(|p| (k, p)).ok_or(Error::Overflow))
                    .collect::<Result<BTreeMap<_, _>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Factored {
            unit: self.unit.pow(e)?,
            tables,
        })
    }

    /// `prod_j fs[j]^exps[j]`.
    pub fn power_product(fs: &[Factored], exps: &[i64]) -> Result<Self> {
        let atoms = fs.first().map_or(0, |f| f.tables.len());
        let mut acc = Factored::one(atoms);
        for (f, &e) in fs.iter().zip(exps) {
            if e != 0 {
                acc = acc.mul(&f.pow(e)?)?;
            }
        }
        Ok(acc)
    }

    /// Per-atom exponent sums.
    pub fn orbit_sums(&self) -> Vec<i64> {
        self.tables.iter().map(|t| t.values().sum()).collect()
    }

    /// `g` with `g(x+1) = self * g(x)` and unit 1, if one exists: per orbit the
    /// exponent of `h(x+k)` in `g` is minus the cumulative sum up to `k`.
    pub fn sigma_quotient_solve(&self) -> Option<Factored> {
        if !self.unit.is_one() {
            return None;
        }
        let mut tables = Vec::with_capacity(self.tables.len());
        for t in &self.tables {
            if t.values().sum::<i64>() != 0 {
                return None;
            }
            let mut table = BTreeMap::new();
            if let (Some(&lo), Some(&hi)) = (t.keys().next(), t.keys().next_back()) {
                let mut cum = 0;
                for k in lo..hi {
                    cum += t.get(&k).copied().unwrap_or(0);
                    if cum != 0 {
                        table.insert(k, -cum);
                    }
                }
            }
            tables.push(table);
        }
        Some(Factored {
            unit: GaussRat::one(),
            tables,
        })
    }

    /// First root of unity `rho` (in the order 1, -1, i, -i) with `rho^m = 1`
    /// such that `rho * self` is a shift quotient, with its solution.
    pub fn radical_solve(&self, m: u32) -> Result<Option<(GaussRat, Factored)>> {
        if m == 0 {
            return Err(Error::ZeroArgument("radical_solve order"));
        }
        if self.unit.is_zero() {
            return Err(Error::ZeroArgument("radical_solve"));
        }
        for rho in roots_of_unity() {
            if !rho.pow(m as i64)?.is_one() {
                continue;
            }
            if let Some(g) = self.scale(&rho).sigma_quotient_solve() {
                return Ok(Some((rho, g)));
            }
        }
        Ok(None)
    }
}

impl JointDecomposition {
    /// Input `i` in factored form.
    pub fn factored(&self, i: usize) -> Factored {
        Factored {
            unit: self.units[i].clone(),
            tables: self.tables[i].clone(),
        }
    }

    /// Expand a factored value over this atom list.
    pub fn expand(&self, f: &Factored) -> RatFunc {
        assemble(&f.unit, self.atoms.iter().zip(&f.tables))
    }
}
