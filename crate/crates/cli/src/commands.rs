use std::collections::BTreeMap;
use std::path::Path;

use gdk_core::cohomology::{coboundary_act, cobounding_witness, h1_classes, is_cocycle, Cocycle};
use gdk_core::descent::{
    ascend, descend, element_from_json, iso_test, twist, unit_iso, BModule, ElementJson,
    ModuleJson, SemilinearModule,
};
use gdk_core::error::Error;
use gdk_core::fincat::fixtures::{self, powerset};
use gdk_core::fincat::{monad_check, MonadFixture};
use gdk_core::forms::{azumaya_suite, etale_h1, hilbert90_suite};
use gdk_core::gfield::{is_galois_extension, GaloisExtension};
use gdk_core::group_core::{FiniteGroup, GCoefficients, GGroup, GSet};
use gdk_core::matrix::{EMatrix, MatrixGroup};
use gdk_core::selftest;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::parse;

/// Inputs echo, results, and the failed assertions (empty on success).
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub failures: Vec<String>,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(s) => write!(f, "{s}"),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Core(e.into()))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn matrix_json(ext: &GaloisExtension, m: &EMatrix) -> Value {
    let rows: Vec<Vec<Vec<u32>>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|e| ext.ring.coords(e)).collect())
        .collect();
    json!(rows)
}

fn module_json(ext: &GaloisExtension, module: &SemilinearModule) -> Result<Value> {
    Ok(to_value(&ModuleJson::from_module(ext, module)?))
}

enum Coefficients {
    Matrix(Box<MatrixGroup>),
    Plain(Box<dyn GCoefficients>),
}

impl Coefficients {
    fn as_dyn(&self) -> &dyn GCoefficients {
        match self {
            Coefficients::Matrix(m) => m.as_ref(),
            Coefficients::Plain(c) => c.as_ref(),
        }
    }

    fn element(&self, a: usize) -> Value {
        match self {
            Coefficients::Matrix(m) => matrix_json(m.extension(), m.element(a)),
            Coefficients::Plain(_) => json!(a),
        }
    }
}

/// `g` acts by inversion off the subgroup generated by squares, which must
/// have index 2.
fn inversion_action(g: &FiniteGroup, coeff: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    if !coeff.is_abelian() {
        return Err(Failure::Usage("inverse action needs an abelian coefficient group".into()));
    }
    let squares: Vec<usize> = g.elements().map(|x| g.mul(x, x)).collect();
    let kernel = g.closure(&squares);
    if 2 * kernel.len() != g.order() {
        return Err(Failure::Usage(
            "inverse action needs the squares of the group to generate an index-2 subgroup".into(),
        ));
    }
    Ok(g.elements()
        .map(|x| {
            coeff
                .elements()
                .map(|a| if kernel.contains(&x) { a } else { coeff.inv(a) })
                .collect()
        })
        .collect())
}

fn coefficients(group: &str, coeff: &str, n: usize, action: Option<&str>) -> Result<Coefficients> {
    if parse::is_extension(group) {
        let ext = parse::extension(group)?;
        let matrix = match coeff {
            "units" => Some(MatrixGroup::gl(&ext, 1)?),
            "GL" => Some(MatrixGroup::gl(&ext, n)?),
            "PGL" => Some(MatrixGroup::pgl(&ext, n)?),
            _ => None,
        };
        if let Some(m) = matrix {
            if action.is_some_and(|a| a != "galois") {
                return Err(Failure::Usage("matrix coefficients carry the Galois action".into()));
            }
            return Ok(Coefficients::Matrix(Box::new(m)));
        }
        return plain(ext.group.clone(), coeff, n, action);
    }
    if matches!(coeff, "units" | "GL" | "PGL") {
        return Err(Failure::Usage(format!(
            "{coeff} coefficients need a Galois group such as gal(p,m)"
        )));
    }
    plain(parse::group(group)?, coeff, n, action)
}

fn plain(g: FiniteGroup, coeff: &str, n: usize, action: Option<&str>) -> Result<Coefficients> {
    let a = if coeff == "S" {
        FiniteGroup::symmetric(n)?
    } else {
        parse::group(coeff)?
    };
    let gg = match action.unwrap_or("trivial") {
        "trivial" => GGroup::trivial(g, a),
        "inverse" => {
            let act = inversion_action(&g, &a)?;
            GGroup::new(g, a, act)?
        }
        other => return Err(Failure::Usage(format!("unknown action {other:?} (trivial or inverse)"))),
    };
    Ok(Coefficients::Plain(Box::new(gg)))
}

fn h1_report(c: &Coefficients, inputs: Value) -> Result<Outcome> {
    let cd = c.as_dyn();
    let part = h1_classes(cd)?;
    let render = |phi: &Cocycle| -> Value { phi.values.iter().map(|&v| c.element(v)).collect() };
    let classes: Vec<Value> = part
        .classes
        .iter()
        .map(|cl| {
            json!({
                "size": cl.len(),
                "members": cl,
                "representative": render(&part.cocycles[cl[0]]),
            })
        })
        .collect();
    let mut failures = Vec::new();
    let trivial = Cocycle::trivial(cd.acting_group().order());
    let mut witnesses = Vec::new();
    for &i in &part.classes[part.distinguished] {
        let phi = &part.cocycles[i];
        match cobounding_witness(cd, phi) {
            Some(w) if coboundary_act(cd, w, &trivial)? == *phi => {
                witnesses.push(json!({ "cocycle": i, "witness": c.element(w) }))
            }
            _ => failures.push(format!("cocycle {i} has no verified cobounding witness")),
        }
    }
    Ok(Outcome {
        inputs,
        results: json!({
            "z1": part.cocycles.len(),
            "h1": part.h1_size(),
            "distinguished": part.distinguished,
            "classes": classes,
            "witnesses": witnesses,
        }),
        failures,
    })
}

pub fn h1(group: &str, coeff: &str, n: usize, action: Option<&str>) -> Result<Outcome> {
    let c = coefficients(group, coeff, n, action)?;
    let inputs = json!({ "group": group, "coeff": coeff, "n": n, "action": action });
    h1_report(&c, inputs)
}

pub fn h1_file(path: &Path) -> Result<Outcome> {
    let gg: GGroup = read_json(path)?;
    let report = gdk_core::group_core::check_g_group(&gg);
    if !report.is_valid() {
        return Err(Failure::Usage(format!("coefficients violate the action laws: {:?}", report.violations)));
    }
    h1_report(&Coefficients::Plain(Box::new(gg)), json!({ "file": path.display().to_string() }))
}

pub fn galois_check(ext: &str, expect: Option<bool>) -> Result<Outcome> {
    let x = parse::extension(ext)?;
    let report = is_galois_extension(&x);
    let failures = match expect {
        Some(e) if e != report.verdict => vec![format!("expected galois = {e}, found {}", report.verdict)],
        _ => Vec::new(),
    };
    Ok(Outcome {
        inputs: json!({ "ext": ext, "expect": expect }),
        results: json!({
            "group_order": x.group.order(),
            "ring_dim": x.dim(),
            "report": to_value(&report),
        }),
        failures,
    })
}

pub fn ascend_cmd(ext: &str, dim: usize) -> Result<Outcome> {
    let x = parse::extension(ext)?;
    let module = ascend(&x, BModule { dim });
    Ok(Outcome {
        inputs: json!({ "ext": ext, "dim": dim }),
        results: json!({ "module": module_json(&x, &module)? }),
        failures: Vec::new(),
    })
}

pub fn descend_cmd(path: &Path) -> Result<Outcome> {
    let mj: ModuleJson = read_json(path)?;
    let (x, module) = mj.to_module()?;
    let desc = descend(&x, &module)?;
    let unit = unit_iso(&x, &module)?;
    let mut failures = Vec::new();
    if !unit.bijective || !unit.equivariant {
        failures.push("E ⊗ D^G -> D is not an equivariant bijection".into());
    }
    let basis: Vec<Vec<Vec<u32>>> = desc
        .basis
        .iter()
        .map(|v| v.iter().map(|&e| x.ring.coords(e)).collect())
        .collect();
    Ok(Outcome {
        inputs: json!({ "file": path.display().to_string(), "module": to_value(&mj) }),
        results: json!({
            "dim": desc.module.dim,
            "basis": basis,
            "unit_bijective": unit.bijective,
            "unit_equivariant": unit.equivariant,
        }),
        failures,
    })
}

/// `{"ext": ..., "n": k, "cocycle": {"g": [[elem, ...], ...]}}`; missing
/// group elements map to the identity.
#[derive(Debug, Deserialize, serde::Serialize)]
pub struct CocycleFile {
    pub ext: gdk_core::gfield::ExtDescriptor,
    pub n: usize,
    #[serde(default)]
    pub cocycle: BTreeMap<String, Vec<Vec<ElementJson>>>,
}

pub fn twist_cmd(path: &Path) -> Result<Outcome> {
    let cf: CocycleFile = read_json(path)?;
    let x = cf.ext.build()?;
    let gl = MatrixGroup::gl(&x, cf.n)?;
    let mut values = vec![0; x.group.order()];
    for (key, rows) in &cf.cocycle {
        let g: usize = key
            .parse()
            .ok()
            .filter(|&g| g < values.len())
            .ok_or_else(|| Failure::Usage(format!("bad group element key {key:?}")))?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| element_from_json(&x.ring, e)).collect())
            .collect::<std::result::Result<Vec<Vec<u32>>, _>>()?;
        let m = EMatrix::from_rows(&rows)?;
        values[g] = gl
            .index_of(&m)
            .ok_or_else(|| Failure::Usage(format!("value at {g} is not an invertible {0}x{0} matrix", cf.n)))?;
    }
    if !is_cocycle(&values, &gl) {
        return Err(Failure::Usage("the supplied map is not a cocycle".into()));
    }
    let phi = Cocycle { values };
    let module = twist(&x, &gl, &phi)?;
    let trivial = ascend(&x, BModule { dim: cf.n });
    let desc = descend(&x, &module)?;
    let mut failures = Vec::new();
    if desc.module.dim != cf.n {
        failures.push(format!("descended dimension {} differs from {}", desc.module.dim, cf.n));
    }
    Ok(Outcome {
        inputs: json!({ "file": path.display().to_string(), "cocycle": to_value(&cf) }),
        results: json!({
            "module": module_json(&x, &module)?,
            "descended_dim": desc.module.dim,
            "iso_to_ascended": iso_test(&x, &module, &trivial)?,
            "equals_ascended": module == trivial,
        }),
        failures,
    })
}

fn tower(p: u32, m: usize) -> Result<GaloisExtension> {
    Ok(GaloisExtension::tower(p, m)?)
}

pub fn hilbert90(p: u32, m: usize, n: usize) -> Result<Outcome> {
    let r = hilbert90_suite(&tower(p, m)?, n)?;
    let failures = if r.holds { Vec::new() } else { vec!["hilbert 90 assertions failed".into()] };
    Ok(Outcome {
        inputs: json!({ "p": p, "m": m, "n": n }),
        results: to_value(&r),
        failures,
    })
}

pub fn etale(p: u32, m: usize, n: usize) -> Result<Outcome> {
    let r = etale_h1(&tower(p, m)?, n)?;
    let mut failures = Vec::new();
    if r.h1 != r.census.len() {
        failures.push(format!("|H^1| = {} but the census has {} shapes", r.h1, r.census.len()));
    }
    if r.h1 != r.h1_cohomology {
        failures.push("conjugacy count and coboundary orbits disagree".into());
    }
    if !r.bijective {
        failures.push("descended shapes do not match the census one to one".into());
    }
    Ok(Outcome {
        inputs: json!({ "p": p, "m": m, "n": n }),
        results: to_value(&r),
        failures,
    })
}

pub fn azumaya(p: u32, m: usize, n: usize) -> Result<Outcome> {
    let r = azumaya_suite(&tower(p, m)?, n)?;
    let failures = if r.holds { Vec::new() } else { vec!["azumaya assertions failed".into()] };
    Ok(Outcome {
        inputs: json!({ "p": p, "m": m, "n": n }),
        results: to_value(&r),
        failures,
    })
}

pub const BUILTIN_FIXTURES: [&str; 5] =
    ["powerset-z2", "powerset-z3", "terminal-z3", "constant-z2", "broken-coproducts"];

fn builtin_fixture(name: &str) -> Result<MonadFixture> {
    let regular = |n| powerset(&GSet::regular(FiniteGroup::cyclic(n)));
    Ok(match name {
        "powerset-z2" => regular(2)?.fixture(),
        "powerset-z3" => regular(3)?.fixture(),
        "terminal-z3" => {
            let (a, cp) = fixtures::terminal(&FiniteGroup::cyclic(3));
            MonadFixture {
                action: a.to_json(),
                coproducts: cp,
                monad: None,
            }
        }
        "constant-z2" => {
            let p = regular(2)?;
            let mut f = p.fixture();
            f.monad = Some(p.constant_monad());
            f
        }
        "broken-coproducts" => fixtures::broken_coproducts(),
        other => {
            return Err(Failure::Usage(format!(
                "unknown fixture {other:?} (one of {})",
                BUILTIN_FIXTURES.join(", ")
            )))
        }
    })
}

pub fn fixture_cmd(name: &str) -> Result<Outcome> {
    Ok(Outcome {
        inputs: json!({ "name": name }),
        results: to_value(&builtin_fixture(name)?),
        failures: Vec::new(),
    })
}

pub fn monad_check_cmd(path: Option<&Path>, builtin: Option<&str>) -> Result<Outcome> {
    let (fixture, inputs) = match (path, builtin) {
        (Some(p), None) => (read_json(p)?, json!({ "file": p.display().to_string() })),
        (None, Some(b)) => (builtin_fixture(b)?, json!({ "builtin": b })),
        _ => return Err(Failure::Usage("give exactly one of --input or --builtin".into())),
    };
    let r = monad_check(&fixture)?;
    let mut failures = Vec::new();
    if !r.holds {
        failures.push("cocycles and algebras do not correspond".into());
    }
    Ok(Outcome {
        inputs,
        results: to_value(&r),
        failures,
    })
}

pub fn selftest_cmd(fast: bool, only: Option<u8>) -> Result<Outcome> {
    let results = match only {
        Some(id) => vec![selftest::run_one(id, fast)],
        None => selftest::run(fast),
    };
    let failures = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("criterion {} ({}): {}", r.id, r.name, r.detail))
        .collect();
    Ok(Outcome {
        inputs: json!({ "fast": fast, "criterion": only }),
        results: to_value(&results),
        failures,
    })
}
