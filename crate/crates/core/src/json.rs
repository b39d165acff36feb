//! JSON, CSV and LaTeX encodings of the exact objects. Scalars are always
//! lowest-terms fraction strings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};

use crate::bracket::{BracketTable, Finite, Provenance};
use crate::dual::{Component, Decomposition, DualElement, DualRep, FactorReport, UniPoly};
use crate::scalar::{format_rational, latex_rational, parse_rational};
use crate::{
    AlgebraKind, BasisLabel, BialgebraParams, Domain, Error, LaurentElement, LieElement, RFamily,
    Tensor, Window, Q,
};

/// Conversion to and from the JSON layouts used by the command-line tool.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self, Error>;

    fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    fn from_json_str(s: &str) -> Result<Self, Error> {
        let value: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&value)
    }
}

fn parse_err(what: &str) -> Error {
    Error::Parse(format!("malformed JSON: {what}"))
}

fn field<'a>(value: &'a Value, key: &str) -> Result<&'a Value, Error> {
    value
        .get(key)
        .ok_or_else(|| parse_err(&format!("missing field `{key}`")))
}

fn int_field(value: &Value, key: &str) -> Result<i64, Error> {
    field(value, key)?
        .as_i64()
        .ok_or_else(|| parse_err(&format!("`{key}` must be an integer")))
}

fn scalar(q: &Q) -> Value {
    Value::String(format_rational(q))
}

fn parse_scalar(value: &Value) -> Result<Q, Error> {
    match value {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().expect("i64").into())),
        _ => Err(parse_err("scalars are fraction strings")),
    }
}

fn scalar_list(values: &[Q]) -> Value {
    Value::Array(values.iter().map(scalar).collect())
}

fn parse_scalar_list(value: &Value) -> Result<Vec<Q>, Error> {
    value
        .as_array()
        .ok_or_else(|| parse_err("expected a list of scalars"))?
        .iter()
        .map(parse_scalar)
        .collect()
}

fn coeff_map(map: &BTreeMap<i64, Q>) -> Value {
    Value::Object(
        map.iter()
            .map(|(e, c)| (e.to_string(), scalar(c)))
            .collect(),
    )
}

fn parse_coeff_map(value: &Value) -> Result<BTreeMap<i64, Q>, Error> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err("expected an exponent map"))?;
    let mut out = BTreeMap::new();
    for (k, v) in obj {
        let e: i64 = k
            .replace('\u{2212}', "-")
            .parse()
            .map_err(|_| parse_err(&format!("bad exponent `{k}`")))?;
        out.insert(e, parse_scalar(v)?);
    }
    Ok(out)
}

fn enum_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_enum<T: serde::de::DeserializeOwned>(value: &Value) -> Result<T, Error> {
    serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))
}

impl Json for Window {
    fn to_json(&self) -> Value {
        json!([self.lo, self.hi])
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        parse_enum(value)
    }
}

impl Json for LaurentElement<Q> {
    fn to_json(&self) -> Value {
        json!({"domain": enum_json(&self.domain()), "coeffs": coeff_map(self.coeffs())})
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        LaurentElement::from_terms(
            parse_enum(field(value, "domain")?)?,
            parse_coeff_map(field(value, "coeffs")?)?,
        )
    }
}

impl Json for LieElement<Q> {
    fn to_json(&self) -> Value {
        let mut v = self.body.to_json();
        v["central"] = scalar(&self.central);
        v
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        let central = match value.get("central") {
            Some(c) => parse_scalar(c)?,
            None => Q::from_integer(0.into()),
        };
        Ok(LieElement::new(LaurentElement::from_json(value)?, central))
    }
}

impl<const N: usize> Json for Tensor<Q, N> {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .iter()
            .map(|(labels, c)| json!({"labels": labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(), "coeff": scalar(c)}))
            .collect();
        json!({"kind": enum_json(&self.kind()), "terms": terms})
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        let kind: AlgebraKind = parse_enum(field(value, "kind")?)?;
        let terms = field(value, "terms")?
            .as_array()
            .ok_or_else(|| parse_err("`terms` must be a list"))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let labels = field(t, "labels")?
                .as_array()
                .ok_or_else(|| parse_err("`labels` must be a list"))?;
            if labels.len() != N {
                return Err(parse_err(&format!("expected {N} labels per term")));
            }
            let mut out = [BasisLabel::Central; N];
            for (slot, l) in out.iter_mut().zip(labels) {
                *slot = l
                    .as_str()
                    .ok_or_else(|| parse_err("labels are strings"))?
                    .parse()?;
            }
            parsed.push((out, parse_scalar(field(t, "coeff")?)?));
        }
        Tensor::from_terms(kind, parsed)
    }
}

impl Json for BialgebraParams<Q> {
    fn to_json(&self) -> Value {
        json!({"n": self.n(), "ell": scalar(self.ell()), "k": scalar(self.k())})
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        BialgebraParams::new(
            int_field(value, "n")?,
            parse_scalar(field(value, "ell")?)?,
            parse_scalar(field(value, "k")?)?,
        )
    }
}

impl Json for RFamily<Q> {
    fn to_json(&self) -> Value {
        match self {
            RFamily::WittN(n) => json!({"family": "witt-n", "n": n}),
            RFamily::Xy(p) => {
                let mut v = p.to_json();
                v["family"] = json!("xy");
                v
            }
        }
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        match field(value, "family")?.as_str() {
            Some("witt-n") => Ok(RFamily::WittN(int_field(value, "n")?)),
            Some("xy") => Ok(RFamily::Xy(BialgebraParams::from_json(value)?)),
            _ => Err(parse_err("`family` must be \"witt-n\" or \"xy\"")),
        }
    }
}

impl Json for DualElement<Q> {
    fn to_json(&self) -> Value {
        let rep = match self.rep() {
            DualRep::Finite(c) => json!({"type": "finite", "coeffs": coeff_map(c)}),
            DualRep::Recursive(rec) => json!({
                "type": "recursive",
                "order": rec.order(),
                "h": scalar_list(rec.h()),
                "anchor": rec.anchor(),
                "seeds": scalar_list(rec.seeds()),
            }),
        };
        json!({"domain": enum_json(&self.domain()), "rep": rep})
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        let domain: Domain = parse_enum(field(value, "domain")?)?;
        let rep = field(value, "rep")?;
        match field(rep, "type")?.as_str() {
            Some("finite") => DualElement::finite(domain, parse_coeff_map(field(rep, "coeffs")?)?),
            Some("recursive") => {
                let h = parse_scalar_list(field(rep, "h")?)?;
                if let Some(order) = rep.get("order") {
                    if order.as_u64() != Some(h.len() as u64) {
                        return Err(parse_err("`order` must equal the length of `h`"));
                    }
                }
                let anchor = match rep.get("anchor") {
                    Some(_) => int_field(rep, "anchor")?,
                    None => 0,
                };
                DualElement::recursive(domain, h, anchor, parse_scalar_list(field(rep, "seeds")?)?)
            }
            _ => Err(parse_err("`rep.type` must be \"finite\" or \"recursive\"")),
        }
    }
}

impl Json for BracketTable<Q> {
    fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((i, j), v)| json!({"i": i, "j": j, "value": v.to_json()}))
            .collect();
        json!({
            "kind": enum_json(&self.kind),
            "params": self.params.to_json(),
            "window": self.window.to_json(),
            "entries": entries,
            "provenance": enum_json(&self.provenance),
        })
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        let entries = field(value, "entries")?
            .as_array()
            .ok_or_else(|| parse_err("`entries` must be a list"))?;
        let mut map = BTreeMap::new();
        for e in entries {
            map.insert(
                (int_field(e, "i")?, int_field(e, "j")?),
                DualElement::from_json(field(e, "value")?)?,
            );
        }
        Ok(BracketTable {
            kind: parse_enum(field(value, "kind")?)?,
            params: RFamily::from_json(field(value, "params")?)?,
            window: Window::from_json(field(value, "window")?)?,
            entries: map,
            provenance: parse_enum::<Provenance>(field(value, "provenance")?)?,
        })
    }
}

impl Json for UniPoly<Q> {
    /// Coefficients, constant term first.
    fn to_json(&self) -> Value {
        scalar_list(self.coeffs())
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        Ok(UniPoly::new(parse_scalar_list(value)?))
    }
}

impl Json for Decomposition<Q> {
    fn to_json(&self) -> Value {
        match self {
            Decomposition::Components {
                components,
                finite_part,
            } => json!({
                "type": "components",
                "components": components
                    .iter()
                    .map(|c| json!({"root": scalar(&c.root), "poly": c.poly.to_json()}))
                    .collect::<Vec<_>>(),
                "finite_part": coeff_map(finite_part),
            }),
            Decomposition::IrreducibleFactors {
                minimal_polynomial,
                factors,
            } => json!({
                "type": "irreducible-factors",
                "minimal_polynomial": minimal_polynomial.to_json(),
                "factors": factors
                    .iter()
                    .map(|f| json!({
                        "factor": f.factor.to_json(),
                        "multiplicity": f.multiplicity,
                        "irreducible": f.irreducible,
                    }))
                    .collect::<Vec<_>>(),
            }),
        }
    }

    fn from_json(value: &Value) -> Result<Self, Error> {
        let list = |key: &str| -> Result<Vec<Value>, Error> {
            Ok(field(value, key)?
                .as_array()
                .ok_or_else(|| parse_err(&format!("`{key}` must be a list")))?
                .clone())
        };
        match field(value, "type")?.as_str() {
            Some("components") => Ok(Decomposition::Components {
                components: list("components")?
                    .iter()
                    .map(|c| {
                        Ok(Component {
                            root: parse_scalar(field(c, "root")?)?,
                            poly: UniPoly::from_json(field(c, "poly")?)?,
                        })
                    })
                    .collect::<Result<_, Error>>()?,
                finite_part: parse_coeff_map(field(value, "finite_part")?)?,
            }),
            Some("irreducible-factors") => Ok(Decomposition::IrreducibleFactors {
                minimal_polynomial: UniPoly::from_json(field(value, "minimal_polynomial")?)?,
                factors: list("factors")?
                    .iter()
                    .map(|f| {
                        Ok(FactorReport {
                            factor: UniPoly::from_json(field(f, "factor")?)?,
                            multiplicity: field(f, "multiplicity")?
                                .as_u64()
                                .ok_or_else(|| parse_err("multiplicity"))?
                                as usize,
                            irreducible: field(f, "irreducible")?
                                .as_bool()
                                .ok_or_else(|| parse_err("irreducible"))?,
                        })
                    })
                    .collect::<Result<_, Error>>()?,
            }),
            _ => Err(parse_err(
                "`type` must be \"components\" or \"irreducible-factors\"",
            )),
        }
    }
}

/// Plain-text form of a finite combination, e.g. `-3/2*e^-1 - e^0`.
pub fn format_finite(f: &Finite<Q>) -> String {
    if f.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (e, c)) in f.iter().enumerate() {
        let negative = c < &Q::from_integer(0.into());
        let magnitude = if negative { -c.clone() } else { c.clone() };
        match (idx, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if magnitude != Q::from_integer(1.into()) {
            let _ = write!(out, "{}*", format_rational(&magnitude));
        }
        let _ = write!(out, "e^{e}");
    }
    out
}

/// LaTeX form of a finite combination in `\varepsilon`.
pub fn latex_finite(f: &Finite<Q>) -> String {
    if f.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (e, c)) in f.iter().enumerate() {
        let mut coeff = latex_rational(c);
        let negative = coeff.starts_with('-');
        if negative {
            coeff.remove(0);
        }
        if idx > 0 {
            out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            out.push('-');
        }
        if coeff != "1" {
            out.push_str(&coeff);
        }
        let _ = write!(out, "\\varepsilon^{{{e}}}");
    }
    out
}

fn entry(table: &BracketTable<Q>, i: i64, j: i64) -> Finite<Q> {
    table.get(i, j).cloned().unwrap_or_default()
}

/// `i,j,value` rows sorted by `(i, j)`, with a header line.
pub fn table_csv(table: &BracketTable<Q>) -> String {
    let mut out = String::from("i,j,value\n");
    for &(i, j) in table.entries.keys() {
        let _ = writeln!(out, "{i},{j},{}", format_finite(&entry(table, i, j)));
    }
    out
}

/// A `tabular` with rows indexed by `i` and columns by `j`.
pub fn table_latex(table: &BracketTable<Q>) -> String {
    let w = table.window;
    let mut out = String::new();
    let _ = writeln!(out, "\\begin{{tabular}}{{c|{}}}", "c".repeat(w.len()));
    let header: Vec<String> = w
        .iter()
        .map(|j| format!("$\\varepsilon^{{{j}}}$"))
        .collect();
    let _ = writeln!(out, "$[\\cdot,\\cdot]$ & {} \\\\", header.join(" & "));
    out.push_str("\\hline\n");
    for i in w.iter() {
        let cells: Vec<String> = w
            .iter()
            .map(|j| format!("${}$", latex_finite(&entry(table, i, j))))
            .collect();
        let _ = writeln!(out, "$\\varepsilon^{{{i}}}$ & {} \\\\", cells.join(" & "));
    }
    out.push_str("\\end{tabular}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::{build_oracle_table, build_table, ClosedForm};
    use crate::dual::decompose_components;
    use crate::scalar::Scalar;
    use crate::{Tensor2, Tensor3};

    fn round_trip<T: Json + PartialEq + std::fmt::Debug>(v: &T) {
        assert_eq!(&T::from_json_str(&v.to_json_string()).unwrap(), v);
    }

    #[test]
    fn element_layout() {
        let e = LieElement::from_terms(
            AlgebraKind::Virasoro,
            [(-1, Q::ratio(-1, 2)), (3, Q::from_int(2))],
        )
        .unwrap();
        let e = e
            .add(&LieElement::central_unit().scale(&Q::ratio(1, 12)))
            .unwrap();
        assert_eq!(
            e.to_json(),
            json!({"domain": "laurent", "coeffs": {"-1": "-1/2", "3": "2"}, "central": "1/12"})
        );
        round_trip(&e);
        let parsed =
            LieElement::<Q>::from_json(&json!({"domain": "poly", "coeffs": {"2": "6/4"}})).unwrap();
        assert_eq!(parsed.coeff(BasisLabel::Exponent(2)), Q::ratio(3, 2));
    }

    #[test]
    fn tensor_layout() {
        let t = Tensor3::from_terms(
            AlgebraKind::Virasoro,
            [(
                [
                    BasisLabel::Exponent(3),
                    BasisLabel::Central,
                    BasisLabel::Exponent(-1),
                ],
                Q::ratio(1, 2),
            )],
        )
        .unwrap();
        assert_eq!(
            t.to_json(),
            json!({"kind": "virasoro", "terms": [{"labels": ["3", "c", "-1"], "coeff": "1/2"}]})
        );
        round_trip(&t);
        let typographic = json!({"kind": "virasoro", "terms": [{"labels": ["3", "c", "\u{2212}1"], "coeff": "1/2"}]});
        assert_eq!(Tensor3::from_json(&typographic).unwrap(), t);
        let r = RFamily::<Q>::WittN(3).r_matrix(AlgebraKind::Witt).unwrap();
        round_trip(r.as_tensor());
        assert!(Tensor2::<Q>::from_json(
            &json!({"kind": "witt", "terms": [{"labels": ["1"], "coeff": "1"}]})
        )
        .is_err());
    }

    #[test]
    fn params_and_dual_layout() {
        let p = BialgebraParams::new(2, Q::ratio(1, 2), Q::from_int(-3)).unwrap();
        assert_eq!(p.to_json(), json!({"n": 2, "ell": "1/2", "k": "-3"}));
        round_trip(&p);
        round_trip(&RFamily::Xy(p));
        let fib = DualElement::recursive(
            Domain::Poly,
            vec![Q::from_int(1); 2],
            0,
            vec![Q::from_int(0), Q::from_int(1)],
        )
        .unwrap();
        assert_eq!(
            fib.to_json(),
            json!({"domain": "poly", "rep": {"type": "recursive", "order": 2, "h": ["1", "1"], "anchor": 0, "seeds": ["0", "1"]}})
        );
        round_trip(&fib);
        round_trip(&DualElement::finite(Domain::Laurent, [(-2, Q::ratio(5, 3))]).unwrap());
        assert!(DualElement::<Q>::from_json_str("{\"domain\": \"laurent\", \"rep\": {\"type\": \"finite\", \"coeffs\": {\"1\": \"1/0\"}}}").is_err());
    }

    #[test]
    fn table_layouts() {
        let source = ClosedForm::new(AlgebraKind::Witt, RFamily::WittN(2)).unwrap();
        let t = build_table(&source, Window::new(-3, 3)).unwrap();
        round_trip(&t);
        round_trip(
            &build_oracle_table(AlgebraKind::Witt, &RFamily::WittN(2), Window::new(-1, 1)).unwrap(),
        );
        assert_eq!(t.to_json()["provenance"], json!("closed-form"));
        let csv = table_csv(&t);
        assert_eq!(csv.lines().count(), 50);
        assert!(csv.contains("\n1,0,3*e^-1\n"));
        let latex = table_latex(&t);
        assert!(latex.starts_with("\\begin{tabular}{c|ccccccc}"));
        assert!(latex.contains("3\\varepsilon^{-1}"));
    }

    #[test]
    fn finite_formatting() {
        let f: Finite<Q> = [
            (-1, Q::ratio(-3, 2)),
            (0, Q::from_int(-1)),
            (1, Q::from_int(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(format_finite(&f), "-3/2*e^-1 - e^0 + e^1");
        assert_eq!(
            latex_finite(&f),
            "-\\tfrac{3}{2}\\varepsilon^{-1} - \\varepsilon^{0} + \\varepsilon^{1}"
        );
        assert_eq!(format_finite(&Finite::new()), "0");
    }

    #[test]
    fn decomposition_layout() {
        let f = DualElement::recursive(
            Domain::Laurent,
            vec![Q::from_int(7), Q::from_int(-10)],
            0,
            vec![Q::from_int(4), Q::from_int(17)],
        )
        .unwrap();
        let d = decompose_components(&f).unwrap();
        assert_eq!(
            d.to_json()["components"][1],
            json!({"root": "5", "poly": ["3"]})
        );
        round_trip(&d);
        let fib = DualElement::recursive(
            Domain::Poly,
            vec![Q::from_int(1); 2],
            0,
            vec![Q::from_int(0), Q::from_int(1)],
        )
        .unwrap();
        let d = decompose_components(&fib).unwrap();
        assert_eq!(d.to_json()["type"], json!("irreducible-factors"));
        round_trip(&d);
    }
}
