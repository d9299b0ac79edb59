//! Static description of every method: parameters, defaults, the usual
//! search grids, and the original reference.

use serde::Serialize;
use serde_json::{json, Value};

use crate::pipeline::{MethodId, RenderHint};

#[derive(Debug, Clone, Serialize)]
pub struct ParamInfo {
    pub name: &'static str,
    /// `integer`, `number`, `enum` or `optional_number`.
    pub kind: &'static str,
    pub default: Value,
    /// Values commonly searched over.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub grid: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub choices: Vec<&'static str>,
    pub description: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodInfo {
    pub id: MethodId,
    pub name: &'static str,
    pub family: &'static str,
    pub render_hint: RenderHint,
    /// True when the method must be fitted on training barcodes first.
    pub requires_model: bool,
    pub output: &'static str,
    pub reference: &'static str,
    pub parameters: Vec<ParamInfo>,
}

fn p(name: &'static str, kind: &'static str, default: Value, grid: Vec<Value>, description: &'static str) -> ParamInfo {
    ParamInfo {
        name,
        kind,
        default,
        grid,
        choices: Vec::new(),
        description,
    }
}

fn resolution() -> ParamInfo {
    p(
        "resolution",
        "integer",
        json!(100),
        vec![json!(50), json!(100), json!(200)],
        "number of evenly spaced sample points",
    )
}

fn seed() -> ParamInfo {
    p("seed", "integer", json!(0), vec![], "seed of the deterministic initialisation")
}

pub fn method_info(id: MethodId) -> MethodInfo {
    use MethodId::*;
    let (name, family, output, reference, parameters) = match id {
        PersistenceStatistics => (
            "Persistence statistics",
            "statistical",
            "38 reals",
            "Chintakunta et al. (2015); Rucco et al. (2016) for the entropy term",
            vec![],
        ),
        EntropySummary => (
            "Entropy summary function",
            "statistical",
            "resolution reals",
            "Atienza et al. (2020)",
            vec![resolution()],
        ),
        AlgebraicFunctions => (
            "Algebraic functions",
            "algebraic",
            "5 reals",
            "Adcock, Carlsson & Carlsson (2016)",
            vec![],
        ),
        TropicalCoordinates => (
            "Tropical coordinates",
            "algebraic",
            "7 reals",
            "Kališnik (2019)",
            vec![p(
                "r",
                "integer",
                json!(10),
                [10, 50, 250, 500, 800].map(|v| json!(v)).to_vec(),
                "scale of the mixed coordinates min(r·λ, p)",
            )],
        ),
        ComplexPolynomial => (
            "Complex polynomials",
            "algebraic",
            "2·n_coeffs reals",
            "Ferri & Landi (1999); Di Fabio & Ferri (2015)",
            vec![
                ParamInfo {
                    choices: vec!["R", "S", "T"],
                    ..p("transform", "enum", json!("R"), vec![], "map from bars to roots")
                },
                p(
                    "n_coeffs",
                    "integer",
                    json!(5),
                    [5, 10, 20].map(|v| json!(v)).to_vec(),
                    "leading coefficients kept",
                ),
            ],
        ),
        BettiCurve => (
            "Betti curve",
            "curve",
            "resolution reals",
            "Umeda (2017); classical rank function",
            vec![resolution()],
        ),
        LifespanCurve => (
            "Lifespan curve",
            "curve",
            "resolution reals",
            "Chung & Lawson (2022)",
            vec![resolution()],
        ),
        PersistenceLandscape => (
            "Persistence landscapes",
            "curve",
            "k·resolution reals",
            "Bubenik (2015)",
            vec![
                p(
                    "k",
                    "integer",
                    json!(5),
                    [2, 5, 10, 20].map(|v| json!(v)).to_vec(),
                    "number of landscape levels",
                ),
                resolution(),
            ],
        ),
        PersistenceSilhouette => (
            "Persistence silhouette",
            "curve",
            "resolution reals",
            "Chazal et al. (2014)",
            vec![
                p(
                    "alpha",
                    "number",
                    json!(1.0),
                    [0, 1, 2, 5, 10, 20].map(|v| json!(v)).to_vec(),
                    "weight exponent: bars weigh (q - p)^alpha",
                ),
                resolution(),
            ],
        ),
        PersistenceImage => (
            "Persistence images",
            "functional",
            "resolution² reals, row-major from lowest lifespan",
            "Adams et al. (2017)",
            vec![
                p(
                    "resolution",
                    "integer",
                    json!(20),
                    [10, 20, 40].map(|v| json!(v)).to_vec(),
                    "pixels per side",
                ),
                p(
                    "sigma",
                    "number",
                    json!(0.5),
                    [0.05, 0.5, 1.0].map(|v| json!(v)).to_vec(),
                    "standard deviation of the Gaussian kernel",
                ),
            ],
        ),
        TemplateFunction => (
            "Template functions (tents)",
            "functional",
            "d² reals",
            "Perea, Munch & Khasawneh (2022)",
            vec![
                p(
                    "d",
                    "integer",
                    json!(10),
                    [2, 3, 5, 10].map(|v| json!(v)).to_vec(),
                    "tents per side of the grid",
                ),
                p(
                    "padding",
                    "number",
                    json!(0.5),
                    [0.5, 1.0, 2.0].map(|v| json!(v)).to_vec(),
                    "margin added around the training points",
                ),
                p(
                    "delta",
                    "optional_number",
                    Value::Null,
                    vec![],
                    "tent half-width; defaults to the grid spacing",
                ),
            ],
        ),
        AdaptiveTemplateSystem => (
            "Adaptive template systems",
            "ensemble",
            "k reals",
            "Polanco & Perea (2019)",
            vec![
                p(
                    "k",
                    "integer",
                    json!(10),
                    [3, 4, 5, 10, 15].map(|v| json!(v)).to_vec(),
                    "mixture components (ellipses)",
                ),
                p(
                    "coverage_scale",
                    "number",
                    json!(2.0),
                    vec![],
                    "ellipses are the coverage_scale-sigma contours",
                ),
                seed(),
            ],
        ),
        Atol => (
            "ATOL",
            "ensemble",
            "b reals",
            "Royer et al. (2021)",
            vec![
                p(
                    "b",
                    "integer",
                    json!(8),
                    [2, 4, 8, 16].map(|v| json!(v)).to_vec(),
                    "number of centers",
                ),
                seed(),
                ParamInfo {
                    choices: vec!["max", "min"],
                    ..p(
                        "scale",
                        "enum",
                        json!("max"),
                        vec![],
                        "half the largest or smallest distance to another center",
                    )
                },
            ],
        ),
    };
    MethodInfo {
        id,
        name,
        family,
        render_hint: id.render_hint(),
        requires_model: id.is_ensemble(),
        output,
        reference,
        parameters,
    }
}

pub fn catalogue() -> Vec<MethodInfo> {
    MethodId::ALL.into_iter().map(method_info).collect()
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "auto".into(),
        other => other.to_string(),
    }
}

/// Plain-text listing of methods, defaults and grids.
pub fn help_text() -> String {
    let mut out = String::from("Methods (parameter=default, searched grid in braces):\n");
    for m in catalogue() {
        out.push_str(&format!("  {:<26} {}\n", m.id.as_str(), m.name));
        for prm in &m.parameters {
            let mut line = format!("      {}={}", prm.name, show(&prm.default));
            if !prm.grid.is_empty() {
                let g: Vec<String> = prm.grid.iter().map(show).collect();
                line.push_str(&format!(" {{{}}}", g.join(",")));
            }
            if !prm.choices.is_empty() {
                line.push_str(&format!(" [{}]", prm.choices.join("|")));
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::VectorizerSpec;

    #[test]
    fn thirteen_entries_with_matching_defaults() {
        let cat = catalogue();
        assert_eq!(cat.len(), 13);
        for m in &cat {
            let params = m.id.default_spec().params();
            for prm in &m.parameters {
                let actual = params.get(prm.name).cloned().unwrap_or(Value::Null);
                let same = match (&actual, &prm.default) {
                    (Value::Number(a), Value::Number(b)) => a.as_f64() == b.as_f64(),
                    (a, b) => a == b,
                };
                assert!(same, "{} {}: {actual} vs {}", m.id, prm.name, prm.default);
            }
            let obj = params.as_object().unwrap();
            assert_eq!(obj.len(), m.parameters.iter().filter(|p| !p.default.is_null()).count());
        }
    }

    #[test]
    fn silhouette_grid() {
        let m = method_info(MethodId::PersistenceSilhouette);
        let alpha = m.parameters.iter().find(|p| p.name == "alpha").unwrap();
        let g: Vec<f64> = alpha.grid.iter().map(|v| v.as_f64().unwrap()).collect();
        assert_eq!(g, vec![0.0, 1.0, 2.0, 5.0, 10.0, 20.0]);
        assert!(help_text().contains("alpha=1.0 {0,1,2,5,10,20}"));
    }

    #[test]
    fn grid_values_are_valid_specs() {
        for m in catalogue() {
            for prm in &m.parameters {
                for v in &prm.grid {
                    let mut obj = m.id.default_spec().params();
                    obj[prm.name] = v.clone();
                    obj["method"] = json!(m.id.as_str());
                    let spec: VectorizerSpec = serde_json::from_value(obj).unwrap();
                    spec.validate().unwrap();
                }
            }
        }
    }
}
