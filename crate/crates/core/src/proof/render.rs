//! Text, LaTeX and JSON forms of proofs, and the JSON reader.

use serde_json::{json, Map, Value};

use crate::calculi::{CalculusId, RuleId};
use crate::formula::{Formula, RenderStyle};
use crate::sequent::Judgment;

use super::Proof;

pub const JSON_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofFormat {
    Text,
    Json,
    Latex,
}

impl std::str::FromStr for ProofFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ProofFormat::Text),
            "json" => Ok(ProofFormat::Json),
            "latex" => Ok(ProofFormat::Latex),
            other => Err(format!("unknown format `{other}` (text, json, latex)")),
        }
    }
}

pub fn render(p: &Proof, c: CalculusId, format: ProofFormat) -> String {
    match format {
        ProofFormat::Text => text(p, RenderStyle::Ascii),
        ProofFormat::Json => serde_json::to_string_pretty(&to_json(p, c)).unwrap() + "\n",
        ProofFormat::Latex => latex(p),
    }
}

/// Indented tree, root first, one node per line.
pub(crate) fn text(p: &Proof, style: RenderStyle) -> String {
    let mut out = String::new();
    text_into(p, style, 0, &mut out);
    out
}

fn text_into(p: &Proof, style: RenderStyle, depth: usize, out: &mut String) {
    let tag = if p.rule.is_initial() { "initial" } else { p.rule.name() };
    out.push_str(&"  ".repeat(depth));
    out.push_str(&p.conclusion.render(style));
    out.push_str("  [");
    out.push_str(tag);
    out.push_str("]\n");
    for q in &p.premises {
        text_into(q, style, depth + 1, out);
    }
}

fn latex_label(rule: RuleId) -> String {
    let mut out = String::from("$");
    let mut word = String::new();
    let mut chars = rule.label().chars().peekable();
    let flush = |word: &mut String, out: &mut String| {
        if !word.is_empty() {
            out.push_str(&format!("\\mathrm{{{word}}}"));
            word.clear();
        }
    };
    while let Some(ch) = chars.next() {
        let sym = match ch {
            '¬' => Some("\\neg "),
            '□' => Some("\\Box "),
            '◇' => Some("\\Diamond "),
            '∧' => Some("\\land "),
            '∨' => Some("\\lor "),
            '→' => Some("\\to "),
            _ => None,
        };
        if let Some(s) = sym {
            flush(&mut word, &mut out);
            out.push_str(s);
        } else if ch == '^' {
            flush(&mut word, &mut out);
            let mut sup = String::new();
            while let Some(&c) = chars.peek() {
                if c == ')' {
                    break;
                }
                sup.push(if c == '*' { '\u{2605}' } else { c });
                chars.next();
            }
            let sup = sup.replace('\u{2605}', "\\star");
            out.push_str(&format!("^{{{sup}}}"));
        } else if ch.is_alphanumeric() || ch == '-' {
            word.push(ch);
        } else {
            flush(&mut word, &mut out);
            out.push(ch);
        }
    }
    flush(&mut word, &mut out);
    out.push('$');
    out
}

fn latex_tree(p: &Proof, out: &mut String) {
    for q in &p.premises {
        latex_tree(q, out);
    }
    let conc = p.conclusion.render(RenderStyle::Latex);
    match p.premises.len() {
        0 => out.push_str(&format!("\\AxiomC{{${conc}$}}\n")),
        n => {
            out.push_str(&format!("\\RightLabel{{\\scriptsize {}}}\n", latex_label(p.rule)));
            let inf = match n {
                1 => "UnaryInfC",
                2 => "BinaryInfC",
                _ => "TrinaryInfC",
            };
            out.push_str(&format!("\\{inf}{{${conc}$}}\n"));
        }
    }
}

/// A standalone LaTeX document drawing the proof with `bussproofs`.
pub(crate) fn latex(p: &Proof) -> String {
    let mut body = String::new();
    latex_tree(p, &mut body);
    format!(
        "\\documentclass{{article}}\n\\usepackage{{amssymb}}\n\\usepackage{{bussproofs}}\n\\begin{{document}}\n\
         \\begin{{prooftree}}\n{body}\\end{{prooftree}}\n\\end{{document}}\n"
    )
}

fn node_json(p: &Proof) -> Value {
    let mut m = Map::new();
    m.insert("conclusion".into(), Value::String(p.conclusion.to_string()));
    m.insert("rule".into(), Value::String(p.rule.name().into()));
    if let Some(f) = &p.principal {
        m.insert("principal".into(), Value::String(f.to_string()));
    }
    m.insert("premises".into(), Value::Array(p.premises.iter().map(node_json).collect()));
    Value::Object(m)
}

/// The JSON form: the root node carries `version` and `calculus` next to
/// its own fields.
pub fn to_json(p: &Proof, c: CalculusId) -> Value {
    let mut root = json!({ "version": JSON_VERSION, "calculus": c.key() });
    if let (Value::Object(r), Value::Object(n)) = (&mut root, node_json(p)) {
        r.extend(n);
    }
    root
}

/// A malformed proof document, located by JSON pointer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at {}: {message}", if pointer.is_empty() { "/" } else { pointer.as_str() })]
pub struct ProofParseError {
    pub pointer: String,
    pub message: String,
}

fn err(pointer: &str, message: impl Into<String>) -> ProofParseError {
    ProofParseError { pointer: pointer.to_string(), message: message.into() }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value, ProofParseError> {
    obj.get(key).ok_or_else(|| err(at, format!("missing field `{key}`")))
}

fn string_at<'a>(v: &'a Value, at: &str) -> Result<&'a str, ProofParseError> {
    v.as_str().ok_or_else(|| err(at, "expected a string"))
}

fn node_from_json(v: &Value, c: CalculusId, at: &str) -> Result<Proof, ProofParseError> {
    let obj = v.as_object().ok_or_else(|| err(at, "expected an object"))?;
    let conc_at = format!("{at}/conclusion");
    let conc_src = string_at(field(obj, "conclusion", at)?, &conc_at)?;
    let conclusion = Judgment::parse(conc_src, c).map_err(|e| err(&conc_at, e.to_string()))?;
    let rule_at = format!("{at}/rule");
    let name = string_at(field(obj, "rule", at)?, &rule_at)?;
    let rule = RuleId::from_name(name).ok_or_else(|| err(&rule_at, format!("unknown rule `{name}`")))?;
    let principal = match obj.get("principal") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let p_at = format!("{at}/principal");
            let src = string_at(v, &p_at)?;
            Some(Formula::parse(src).map_err(|e| err(&p_at, e.to_string()))?)
        }
    };
    let prem_at = format!("{at}/premises");
    let premises = match obj.get("premises") {
        None => vec![],
        Some(v) => v
            .as_array()
            .ok_or_else(|| err(&prem_at, "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, q)| node_from_json(q, c, &format!("{prem_at}/{i}")))
            .collect::<Result<_, _>>()?,
    };
    Ok(Proof { conclusion, rule, principal, premises })
}

/// Read a proof document. `calculus` overrides the document's own
/// `calculus` field; one of the two must be present.
pub fn parse_json(src: &str, calculus: Option<CalculusId>) -> Result<(CalculusId, Proof), ProofParseError> {
    let v: Value = serde_json::from_str(src).map_err(|e| err("", format!("invalid JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| err("", "expected an object"))?;
    if let Some(ver) = obj.get("version") {
        if ver.as_u64() != Some(JSON_VERSION) {
            return Err(err("/version", format!("unsupported version {ver}")));
        }
    }
    let declared = match obj.get("calculus") {
        None => None,
        Some(v) => {
            let key = string_at(v, "/calculus")?;
            Some(CalculusId::from_key(key).ok_or_else(|| err("/calculus", format!("unknown calculus `{key}`")))?)
        }
    };
    let c = calculus.or(declared).ok_or_else(|| err("", "missing field `calculus`"))?;
    Ok((c, node_from_json(&v, c, "")?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::{gs4_example, gts4_example, lts4_example};

    #[test]
    fn json_round_trip() {
        for (c, p) in [(CalculusId::LTS4, lts4_example()), (CalculusId::GS4, gs4_example())] {
            let text = render(&p, c, ProofFormat::Json);
            let (c2, q) = parse_json(&text, None).unwrap();
            assert_eq!((c2, q), (c, p));
        }
    }

    #[test]
    fn json_errors_carry_pointers() {
        let mut v = to_json(&lts4_example(), CalculusId::LTS4);
        v["premises"][0]["rule"] = Value::String("frobnicate".into());
        let e = parse_json(&v.to_string(), None).unwrap_err();
        assert_eq!(e.pointer, "/premises/0/rule");
        assert!(e.message.contains("frobnicate"));
        let e = parse_json("{\"calculus\": \"lts4\", \"rule\": \"axiom\", \"premises\": []}", None).unwrap_err();
        assert!(e.message.contains("conclusion"));
        assert!(parse_json("[1, 2", None).is_err());
    }

    #[test]
    fn text_and_latex() {
        let p = gts4_example();
        let t = render(&p, CalculusId::GTS4, ProofFormat::Text);
        assert_eq!(t.lines().count(), 7);
        assert!(t.ends_with("~p => ~p  [initial]\n"));
        let l = render(&p, CalculusId::GTS4, ProofFormat::Latex);
        let steps = l.lines().filter(|x| x.starts_with("\\AxiomC") || x.starts_with("\\UnaryInfC")).count();
        assert_eq!(steps, 7);
        assert!(l.contains("\\usepackage{bussproofs}"));
        assert!(l.contains("$(\\neg \\Diamond \\mathrm{right}^{T})$"), "{l}");
    }
}
