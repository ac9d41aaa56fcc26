//! Problem and polynomial-tuple files.
//!
//! Every rational is a JSON string `"p/q"` (or `"p"`); JSON integers are
//! accepted where an integer is meant. Decimal numbers are rejected
//! anywhere in the document.

use serde_json::{json, Map, Value};

use polyexp_core::arith::{format_rat, parse_rat, ArithError, CycNum, Rat};
use polyexp_core::model::{validate_system, CycPolyMV, EqSystem, Generator, LogCoord, RawSystem};
use polyexp_core::specialize::PolyTuple;

use crate::CliError;

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub name: Option<String>,
    pub description: Option<String>,
    pub system: EqSystem,
}

/// A cursor into the document that remembers its JSON path for errors.
struct Node<'a> {
    value: &'a Value,
    path: String,
}

fn err(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{path}: {msg}"))
}

fn float_message(text: &str) -> String {
    match parse_rat(text) {
        Err(ArithError::FloatForbidden { hint: Some(h), .. }) => format!("floats forbidden; write {h}"),
        _ => "floats forbidden; write p/q".to_string(),
    }
}

impl<'a> Node<'a> {
    fn root(value: &'a Value) -> Self {
        Node {
            value,
            path: "$".into(),
        }
    }

    fn object(&self) -> Result<&'a Map<String, Value>, CliError> {
        self.value.as_object().ok_or_else(|| err(&self.path, "expected an object"))
    }

    fn field(&self, key: &str) -> Result<Node<'a>, CliError> {
        self.optional(key)?
            .ok_or_else(|| err(&self.path, format!("missing \"{key}\"")))
    }

    fn optional(&self, key: &str) -> Result<Option<Node<'a>>, CliError> {
        Ok(match self.object()?.get(key) {
            Some(Value::Null) | None => None,
            Some(value) => Some(Node {
                value,
                path: format!("{}.{key}", self.path),
            }),
        })
    }

    fn items(&self) -> Result<Vec<Node<'a>>, CliError> {
        let arr = self.value.as_array().ok_or_else(|| err(&self.path, "expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, value)| Node {
                value,
                path: format!("{}[{i}]", self.path),
            })
            .collect())
    }

    fn usize(&self) -> Result<usize, CliError> {
        match self.value {
            Value::Number(n) => n
                .as_u64()
                .and_then(|x| usize::try_from(x).ok())
                .ok_or_else(|| err(&self.path, "expected a nonnegative integer")),
            _ => Err(err(&self.path, "expected a nonnegative integer")),
        }
    }

    fn string(&self) -> Result<&'a str, CliError> {
        self.value.as_str().ok_or_else(|| err(&self.path, "expected a string"))
    }

    fn rat(&self) -> Result<Rat, CliError> {
        let text = match self.value {
            Value::String(s) => s.clone(),
            Value::Number(n) if !n.is_f64() => n.to_string(),
            _ => return Err(err(&self.path, "expected a rational string \"p/q\"")),
        };
        parse_rat(&text).map_err(|e| match e {
            ArithError::FloatForbidden { .. } => err(&self.path, float_message(&text)),
            other => err(&self.path, other),
        })
    }
}

fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

/// Rejects decimal JSON numbers anywhere, including unused fields.
fn reject_floats(value: &Value, path: &str) -> Result<(), CliError> {
    match value {
        Value::Number(n) if n.is_f64() => Err(err(path, float_message(&n.to_string()))),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .try_for_each(|(i, v)| reject_floats(v, &format!("{path}[{i}]"))),
        Value::Object(map) => map.iter().try_for_each(|(k, v)| reject_floats(v, &format!("{path}.{k}"))),
        _ => Ok(()),
    }
}

fn parse_poly(node: &Node<'_>, order: usize, nvars: usize) -> Result<CycPolyMV, CliError> {
    let mut terms = Vec::new();
    for m in node.items()? {
        let exps: Vec<u32> = m
            .field("exponents")?
            .items()?
            .iter()
            .map(|e| e.usize().and_then(|x| u32::try_from(x).map_err(|_| err(&e.path, "exponent too large"))))
            .collect::<Result<_, _>>()?;
        if exps.len() != nvars {
            return Err(err(&m.path, format!("expected {nvars} exponents, found {}", exps.len())));
        }
        let coeff = m.field("coeff")?;
        let raw: Vec<Rat> = coeff.items()?.iter().map(Node::rat).collect::<Result<_, _>>()?;
        if raw.is_empty() {
            return Err(err(&coeff.path, "empty coefficient vector"));
        }
        let c = CycNum::normalize(&raw, order).map_err(|e| err(&coeff.path, e))?;
        terms.push((exps, c));
    }
    CycPolyMV::from_terms(order, nvars, terms).map_err(|e| err(&node.path, e))
}

fn coefficient_order(root: &Node<'_>) -> Result<usize, CliError> {
    let order = match root.optional("coefficient_order")? {
        Some(n) => n.usize()?,
        None => 1,
    };
    if order == 0 {
        return Err(err("$.coefficient_order", "must be positive"));
    }
    Ok(order)
}

fn optional_string(root: &Node<'_>, key: &str) -> Result<Option<String>, CliError> {
    root.optional(key)?.map(|n| n.string().map(str::to_string)).transpose()
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, CliError> {
    let doc = parse_json(text)?;
    reject_floats(&doc, "$")?;
    let root = Node::root(&doc);
    root.object()?;

    let name = optional_string(&root, "name")?;
    let description = optional_string(&root, "description")?;
    let t = root.field("variables")?.usize()?;
    let order = coefficient_order(&root)?;

    let mut generators = Vec::new();
    if let Some(gens) = root.optional("generators")? {
        for g in gens.items()? {
            let name = g.field("name")?.string()?;
            generators.push(match g.optional("value")? {
                Some(v) => Generator::concrete(name, v.rat()?),
                None => Generator::symbol(name),
            });
        }
    }
    let m = generators.len();

    let terms_node = root.field("terms")?;
    let mut alpha = Vec::new();
    let mut polys = Vec::new();
    for term in terms_node.items()? {
        polys.push(parse_poly(&term.field("poly")?, order, t)?);
        let row_node = term.field("alpha")?;
        let mut row = Vec::new();
        for coord in row_node.items()? {
            let rho = match coord.optional("rho")? {
                Some(r) => r.rat()?,
                None => Rat::from_integer(0.into()),
            };
            let logs = match coord.optional("logs")? {
                Some(l) => l.items()?.iter().map(Node::rat).collect::<Result<Vec<_>, _>>()?,
                None => vec![Rat::from_integer(0.into()); m],
            };
            if logs.len() != m {
                return Err(err(&coord.path, format!("expected {m} log coefficients, found {}", logs.len())));
            }
            row.push(LogCoord::new(rho, logs));
        }
        if row.len() != t {
            return Err(err(&row_node.path, format!("expected {t} entries, found {}", row.len())));
        }
        alpha.push(row);
    }
    if alpha.is_empty() {
        return Err(err(&terms_node.path, "at least one term is required"));
    }

    let system = validate_system(RawSystem {
        generators,
        alpha,
        polys,
        order,
    })
    .map_err(|e| CliError::Input(format!("invalid system: {e}")))?;
    Ok(ProblemFile {
        name,
        description,
        system,
    })
}

fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(format_rat(r))).collect())
}

pub fn poly_json(p: &CycPolyMV) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| json!({ "exponents": e, "coeff": rats(c.coeffs()) }))
            .collect(),
    )
}

/// Canonical JSON form of a problem; parsing it gives back the same system.
pub fn problem_json(p: &ProblemFile) -> Value {
    let raw = p.system.to_raw();
    let generators: Vec<Value> = raw
        .generators
        .iter()
        .map(|g| match &g.value {
            Some(v) => json!({ "name": g.name, "value": format_rat(v) }),
            None => json!({ "name": g.name }),
        })
        .collect();
    let terms: Vec<Value> = raw
        .polys
        .iter()
        .zip(&raw.alpha)
        .map(|(poly, row)| {
            let alpha: Vec<Value> = row
                .iter()
                .map(|c| json!({ "rho": format_rat(&c.rho), "logs": rats(&c.logs) }))
                .collect();
            json!({ "poly": poly_json(poly), "alpha": alpha })
        })
        .collect();
    let mut doc = json!({
        "variables": p.system.t(),
        "coefficient_order": raw.order,
        "generators": generators,
        "terms": terms,
    });
    if let Some(n) = &p.name {
        doc["name"] = json!(n);
    }
    if let Some(d) = &p.description {
        doc["description"] = json!(d);
    }
    doc
}

pub fn emit_problem(p: &ProblemFile) -> String {
    let mut s = serde_json::to_string_pretty(&problem_json(p)).expect("values serialize");
    s.push('\n');
    s
}

/// `{"variables": [names], "coefficient_order": M, "entries": [poly, …]}`
/// with each poly in the problem-file monomial format.
pub fn parse_poly_tuple(text: &str) -> Result<PolyTuple, CliError> {
    let doc = parse_json(text)?;
    reject_floats(&doc, "$")?;
    let root = Node::root(&doc);
    let variables: Vec<String> = root
        .field("variables")?
        .items()?
        .iter()
        .map(|v| v.string().map(str::to_string))
        .collect::<Result<_, _>>()?;
    let order = coefficient_order(&root)?;
    let entries_node = root.field("entries")?;
    let entries = entries_node
        .items()?
        .iter()
        .map(|e| parse_poly(e, order, variables.len()))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.is_empty() {
        return Err(err(&entries_node.path, "at least one entry is required"));
    }
    PolyTuple::new(variables, order, entries).map_err(|e| CliError::Input(e.to_string()))
}
