//! Document types and commands behind the `prodmin` binary.

use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use prodmin_core::drring::{
    eval_product, LaurentExpr, PiMonomial, ProductDef, ProductSpec, RPiExtension, RootOfUnity, Term,
};
use prodmin_core::expr::{parse_const, parse_expr, render, render_const, render_in};
use prodmin_core::lattice::RelationLattice;
use prodmin_core::pipeline::{
    minimal_representation, KernelGenerator, MinimalRepresentation, Report,
};
use prodmin_core::verify::{check_commutes, check_kernel, start_index, CheckResult, VerifyReport};

/// Checked range used when neither the command line nor the input fixes one.
pub const DEFAULT_N_MAX: i64 = 50;
/// Minimum number of checked indices under the default range.
pub const DEFAULT_SPAN: i64 = 40;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid document: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{context}: {source}")]
    Expression {
        context: String,
        #[source]
        source: prodmin_core::Error,
    },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] prodmin_core::Error),
}

impl CliError {
    /// 1 for unreadable or unparsable input, 2 for rejected input or failed computation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Json { .. } | CliError::Expression { .. } => 1,
            CliError::Validation(_) | CliError::Core(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InputProduct {
    pub name: String,
    pub multiplicand: String,
    pub lower: u32,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub products: Vec<InputProduct>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PiMonomialDoc {
    pub multiplicand: String,
    pub lower: i64,
    pub kappa: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootDoc {
    pub rho: String,
    pub order: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ImageDoc {
    pub coefficient: String,
    pub exponents: Vec<i64>,
    pub z_power: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct KernelDoc {
    pub exponents: Vec<i64>,
    pub g: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckDoc {
    pub label: String,
    pub first: i64,
    pub last: i64,
    pub pass: bool,
    pub first_failure: Option<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerificationDoc {
    pub pass: bool,
    pub start: i64,
    pub n_max: i64,
    pub products: Vec<CheckDoc>,
    pub kernel: Vec<CheckDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OutputDocument {
    pub rank: usize,
    pub divisors: Vec<u32>,
    pub pi_monomials: Vec<PiMonomialDoc>,
    pub root_of_unity: Option<RootDoc>,
    pub images: IndexMap<String, ImageDoc>,
    pub kernel_generators: Vec<KernelDoc>,
    pub rewritten: IndexMap<String, String>,
    pub verification: VerificationDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationsDocument {
    pub rank: usize,
    pub m_basis: Vec<Vec<i64>>,
    pub kernel_generators: Vec<KernelDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ValueDoc {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EvalDocument {
    pub n: i64,
    pub values: Vec<ValueDoc>,
}

/// Rendered JSON and whether every check passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub json: String,
    pub pass: bool,
}

impl CommandOutput {
    fn new<T: Serialize>(doc: &T, pass: bool) -> Self {
        let json = serde_json::to_string_pretty(doc).expect("documents serialize");
        CommandOutput { json, pass }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: shown,
        source,
    })
}

fn parse_field(
    context: impl FnOnce() -> String,
    s: &str,
) -> CliResult<prodmin_core::poly::RatFunc> {
    parse_expr(s).map_err(|source| CliError::Expression {
        context: context(),
        source,
    })
}

/// Parse every multiplicand and validate the product list.
pub fn build_spec(doc: &InputDocument) -> CliResult<ProductSpec> {
    let mut products = Vec::with_capacity(doc.products.len());
    for p in &doc.products {
        let f = parse_field(|| format!("multiplicand of `{}`", p.name), &p.multiplicand)?;
        products.push(ProductDef {
            name: p.name.clone(),
            f,
            lower: i64::from(p.lower),
        });
    }
    ProductSpec::new(products).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn load_input(path: &Path) -> CliResult<(InputDocument, ProductSpec)> {
    let doc: InputDocument = read_json(path)?;
    let spec = build_spec(&doc)?;
    Ok((doc, spec))
}

/// Explicit range if given, else `max(50, start + 40)`.
fn resolve_n_max(explicit: Option<i64>, start: i64) -> CliResult<i64> {
    match explicit {
        Some(n) if n < start => Err(CliError::Validation(format!(
            "n_max = {n} is below the first checkable index {start}"
        ))),
        Some(n) => Ok(n),
        None => Ok(DEFAULT_N_MAX.max(start + DEFAULT_SPAN)),
    }
}

fn check_doc(c: &CheckResult) -> CheckDoc {
    CheckDoc {
        label: c.label.clone(),
        first: c.first,
        last: c.last,
        pass: c.pass,
        first_failure: c.first_failure,
    }
}

fn run_checks(
    spec: &ProductSpec,
    rep: &MinimalRepresentation,
    explicit: Option<i64>,
) -> CliResult<VerificationDoc> {
    let start = start_index(spec, rep)?;
    let n_max = resolve_n_max(explicit, start)?;
    let report: VerifyReport =
        check_commutes(spec, rep, n_max)?.merge(check_kernel(spec, &rep.kernel_gens, n_max)?);
    Ok(VerificationDoc {
        pass: report.pass,
        start,
        n_max,
        products: report.products.iter().map(check_doc).collect(),
        kernel: report.kernel.iter().map(check_doc).collect(),
    })
}

fn kernel_docs(gens: &[KernelGenerator]) -> Vec<KernelDoc> {
    gens.iter()
        .map(|k| KernelDoc {
            exponents: k.exps.clone(),
            g: render(&k.g),
        })
        .collect()
}

fn power_suffix(e: i64) -> String {
    if e == 1 {
        String::new()
    } else {
        format!("^({e})")
    }
}

/// `name(n) = coefficient * rho^(z n) * prod generators`, with every generator spelled out.
fn rewritten_formula(name: &str, image: &LaurentExpr, ext: &RPiExtension) -> String {
    let terms: Vec<String> = image.terms.iter().map(|t| rewritten_term(t, ext)).collect();
    format!(
        "{name}(n) = {}",
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    )
}

fn rewritten_term(t: &Term, ext: &RPiExtension) -> String {
    let mut parts = Vec::new();
    if !t.coef.is_one() {
        parts.push(format!("({})", render_in(&t.coef, "n")));
    }
    if let Some(root) = ext.r_monomial.as_ref().filter(|_| t.zpow != 0) {
        let exponent = if t.zpow == 1 {
            "n".to_string()
        } else {
            format!("{}*n", t.zpow)
        };
        parts.push(format!("({})^({exponent})", render_const(&root.rho)));
    }
    for (pm, &e) in ext.pi_monomials.iter().zip(&t.exps) {
        if e == 0 {
            continue;
        }
        let prod = format!("prod(k={}..n, {})", pm.lower, render(&pm.alpha.shift(-1)));
        let generator = if pm.kappa.is_one() {
            prod
        } else {
            format!("{}*{prod}", render_const(&pm.kappa))
        };
        parts.push(format!("({generator}){}", power_suffix(e)));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" * ")
    }
}

/// Output document of a representation, verified against `spec`.
pub fn output_document(
    spec: &ProductSpec,
    rep: &MinimalRepresentation,
    n_max: Option<i64>,
) -> CliResult<OutputDocument> {
    let verification = run_checks(spec, rep, n_max)?;
    let pi_monomials = rep
        .extension
        .pi_monomials
        .iter()
        .map(|pm| PiMonomialDoc {
            multiplicand: render(&pm.alpha.shift(-1)),
            lower: pm.lower,
            kappa: render_const(&pm.kappa),
        })
        .collect();
    let root_of_unity = rep.extension.r_monomial.as_ref().map(|r| RootDoc {
        rho: render_const(&r.rho),
        order: r.order,
    });
    let mut images = IndexMap::new();
    let mut rewritten = IndexMap::new();
    for (name, img) in &rep.images {
        let [t] = img.terms.as_slice() else {
            return Err(CliError::Validation(format!(
                "image of `{name}` is not a single monomial"
            )));
        };
        images.insert(
            name.clone(),
            ImageDoc {
                coefficient: render(&t.coef),
                exponents: t.exps.clone(),
                z_power: t.zpow,
            },
        );
        rewritten.insert(name.clone(), rewritten_formula(name, img, &rep.extension));
    }
    Ok(OutputDocument {
        rank: rep.report.rank,
        divisors: rep.report.divisors.clone(),
        pi_monomials,
        root_of_unity,
        images,
        kernel_generators: kernel_docs(&rep.kernel_gens),
        rewritten,
        verification,
    })
}

fn parse_const_field(
    context: impl FnOnce() -> String,
    s: &str,
) -> CliResult<prodmin_core::numbers::GaussRat> {
    parse_const(s).map_err(|source| CliError::Expression {
        context: context(),
        source,
    })
}

/// Rebuild a representation from a previously emitted output document.
pub fn representation_from_document(
    spec: &ProductSpec,
    doc: &OutputDocument,
) -> CliResult<MinimalRepresentation> {
    let mut pi_monomials = Vec::with_capacity(doc.pi_monomials.len());
    for (i, pm) in doc.pi_monomials.iter().enumerate() {
        let phi = parse_field(
            || format!("multiplicand of generator {}", i + 1),
            &pm.multiplicand,
        )?;
        let kappa = parse_const_field(|| format!("kappa of generator {}", i + 1), &pm.kappa)?;
        pi_monomials.push(PiMonomial {
            alpha: phi.shift(1),
            lower: pm.lower,
            kappa,
        });
    }
    let r_monomial = match &doc.root_of_unity {
        Some(r) => {
            let rho = parse_const_field(|| "root of unity".to_string(), &r.rho)?;
            if r.order == 0 || !rho.pow(i64::from(r.order))?.is_one() {
                return Err(CliError::Validation(format!(
                    "{} is not a root of unity of order {}",
                    r.rho, r.order
                )));
            }
            Some(RootOfUnity {
                rho,
                order: r.order,
            })
        }
        None => None,
    };
    let extension = RPiExtension {
        pi_monomials,
        r_monomial,
    };

    if doc.images.len() != spec.len() {
        return Err(CliError::Validation(format!(
            "representation has {} images for {} products",
            doc.images.len(),
            spec.len()
        )));
    }
    let mut images = Vec::with_capacity(spec.len());
    for p in spec.products() {
        let img = doc.images.get(&p.name).ok_or_else(|| {
            CliError::Validation(format!("representation has no image for `{}`", p.name))
        })?;
        if img.exponents.len() != extension.pi_monomials.len() {
            return Err(CliError::Validation(format!(
                "image of `{}` has the wrong number of exponents",
                p.name
            )));
        }
        let coef = parse_field(|| format!("coefficient of `{}`", p.name), &img.coefficient)?;
        images.push((
            p.name.clone(),
            LaurentExpr::monomial(coef, img.exponents.clone(), img.z_power),
        ));
    }

    let mut kernel_gens = Vec::with_capacity(doc.kernel_generators.len());
    for (i, k) in doc.kernel_generators.iter().enumerate() {
        if k.exponents.len() != spec.len() {
            return Err(CliError::Validation(format!(
                "relation {} has the wrong number of exponents",
                i + 1
            )));
        }
        let g = parse_field(|| format!("constant of relation {}", i + 1), &k.g)?;
        kernel_gens.push(KernelGenerator {
            exps: k.exponents.clone(),
            g,
        });
    }
    let m_basis = RelationLattice::from_rows(
        spec.len(),
        kernel_gens.iter().map(|k| k.exps.clone()).collect(),
    );

    Ok(MinimalRepresentation {
        extension,
        images,
        kernel_gens,
        report: Report {
            rank: doc.rank,
            divisors: doc.divisors.clone(),
            snf: None,
            m_basis,
            transformed: Vec::new(),
            gbar: Vec::new(),
            constants: Vec::new(),
            nu: Vec::new(),
            start: doc.verification.start,
        },
    })
}

pub fn cmd_simplify(input: &Path) -> CliResult<CommandOutput> {
    let (doc, spec) = load_input(input)?;
    let rep = minimal_representation(&spec)?;
    let out = output_document(&spec, &rep, doc.options.n_max.map(i64::from))?;
    let pass = out.verification.pass;
    Ok(CommandOutput::new(&out, pass))
}

pub fn cmd_relations(input: &Path) -> CliResult<CommandOutput> {
    let (_, spec) = load_input(input)?;
    let rep = minimal_representation(&spec)?;
    let doc = RelationsDocument {
        rank: rep.report.rank,
        m_basis: rep.report.m_basis.basis_rows()?,
        kernel_generators: kernel_docs(&rep.kernel_gens),
    };
    Ok(CommandOutput::new(&doc, true))
}

pub fn cmd_verify(input: &Path, rep_path: &Path, n_max: Option<i64>) -> CliResult<CommandOutput> {
    let (doc, spec) = load_input(input)?;
    let rep_doc: OutputDocument = read_json(rep_path)?;
    let rep = representation_from_document(&spec, &rep_doc)?;
    let verification = run_checks(&spec, &rep, n_max.or(doc.options.n_max.map(i64::from)))?;
    let pass = verification.pass;
    Ok(CommandOutput::new(&verification, pass))
}

pub fn cmd_eval(input: &Path, n: i64) -> CliResult<CommandOutput> {
    let (_, spec) = load_input(input)?;
    let values = spec
        .products()
        .iter()
        .map(|p| ValueDoc {
            name: p.name.clone(),
            value: render_const(&eval_product(&p.f, p.lower, n)),
        })
        .collect();
    Ok(CommandOutput::new(&EvalDocument { n, values }, true))
}
