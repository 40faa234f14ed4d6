//! Line-based text formats, header `format yangbax/1`.
//!
//! ```text
//! format yangbax/1
//! kind tensor-map
//! dim 2
//! shape 2 2
//! entry 0 1 <- 1 0 = -1
//! ```
//!
//! Blank lines and `#` comments are ignored. Scalars are exact rationals
//! written `p` or `p/q`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{Edge, Quiver};
use crate::error::{Error, Result};
use crate::infty::{RnFamily, StructureConstants};
use crate::linfty::{Degree, Element, Factor, Monomial, MultiBracketFamily};
use crate::operad::{QuadraticRelation, Symmetry};
use crate::scalar::{fmt_q, parse_q, Q};
use crate::tensor::{GradedTensor, TensorMap, Word};

pub const HEADER: &str = "format yangbax/1";

/// Upper bound on `dim` and tensor degrees accepted from files.
const MAX_DIM: usize = 16;
const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    TensorMap,
    Quiver,
    Structure,
    Relation,
    Brackets,
    Rn,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::TensorMap => "tensor-map",
            Kind::Quiver => "quiver",
            Kind::Structure => "structure",
            Kind::Relation => "relation",
            Kind::Brackets => "brackets",
            Kind::Rn => "rn",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [Kind::TensorMap, Kind::Quiver, Kind::Structure, Kind::Relation, Kind::Brackets, Kind::Rn]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    rest: &'a str,
}

impl Line<'_> {
    fn err<T>(&self, msg: impl std::fmt::Display) -> Result<T> {
        Err(Error::Parse { line: self.no, msg: format!("field {:?}: {msg}", self.key) })
    }

    fn fields(&self) -> Vec<&str> {
        self.rest.split_whitespace().collect()
    }

    fn usize_at(&self, s: &str) -> Result<usize> {
        s.parse().or_else(|_| self.err(format!("expected a nonnegative integer, got {s:?}")))
    }

    fn q_at(&self, s: &str) -> Result<Q> {
        parse_q(s).or_else(|e| self.err(e))
    }
}

/// Splits a document into its kind and the body lines.
fn body(text: &str) -> Result<(Kind, Vec<Line<'_>>)> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then(|| {
            let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            Line { no: i + 1, key, rest: rest.trim() }
        })
    });
    let head = lines.next().ok_or(Error::Parse { line: 1, msg: "empty document".into() })?;
    if head.key != "format" || head.rest != "yangbax/1" {
        return head.err(format!("expected header {HEADER:?}"));
    }
    let kind_line = lines.next().ok_or(Error::Parse { line: head.no, msg: "missing kind line".into() })?;
    if kind_line.key != "kind" {
        return kind_line.err("expected `kind <name>`");
    }
    let kind = Kind::parse(kind_line.rest).map_or_else(|| kind_line.err("unknown kind"), Ok)?;
    Ok((kind, lines.collect()))
}

/// The declared kind of a document.
pub fn detect_kind(text: &str) -> Result<Kind> {
    body(text).map(|(k, _)| k)
}

fn expect_kind<'a>(text: &'a str, kind: Kind) -> Result<Vec<Line<'a>>> {
    let (k, lines) = body(text)?;
    if k != kind {
        return Err(Error::Parse { line: 2, msg: format!("expected kind {}, found {}", kind.name(), k.name()) });
    }
    Ok(lines)
}

fn header(kind: Kind) -> String {
    format!("{HEADER}\nkind {}\n", kind.name())
}

pub fn parse_tensor_map(text: &str) -> Result<TensorMap> {
    let lines = expect_kind(text, Kind::TensorMap)?;
    let mut dim = None;
    let mut shape = None;
    let mut entries: Vec<(&Line, Word, Word, Q)> = Vec::new();
    for l in &lines {
        match l.key {
            "dim" => {
                let d = l.usize_at(l.rest)?;
                if d == 0 || d > MAX_DIM {
                    return l.err(format!("dim must lie in 1..={MAX_DIM}"));
                }
                dim = Some(d);
            }
            "shape" => {
                let f = l.fields();
                if f.len() != 2 {
                    return l.err("expected `shape <domain> <codomain>`");
                }
                let (a, b) = (l.usize_at(f[0])?, l.usize_at(f[1])?);
                if a > MAX_DEGREE || b > MAX_DEGREE {
                    return l.err(format!("tensor degrees are limited to {MAX_DEGREE}"));
                }
                shape = Some((a, b));
            }
            "entry" => {
                let Some((words, value)) = l.rest.split_once('=') else {
                    return l.err("expected `entry <out> <- <in> = <value>`");
                };
                let Some((out, inp)) = words.split_once("<-") else {
                    return l.err("missing `<-` between output and input words");
                };
                let parse_word = |s: &str| s.split_whitespace().map(|t| l.usize_at(t)).collect::<Result<Word>>();
                entries.push((l, parse_word(out)?, parse_word(inp)?, l.q_at(value)?));
            }
            _ => return l.err("unknown field"),
        }
    }
    let dim = dim.ok_or(Error::Parse { line: 0, msg: "missing field \"dim\"".into() })?;
    let (domain, codomain) = shape.unwrap_or((2, 2));
    let mut m = TensorMap::zero(dim, domain, codomain);
    for (l, o, i, c) in entries {
        if o.len() != codomain || i.len() != domain {
            return l.err(format!("words must have lengths {codomain} and {domain}"));
        }
        if o.iter().chain(&i).any(|a| *a >= dim) {
            return l.err(format!("index out of range for dim {dim}"));
        }
        m.add_entry(o, i, &c);
    }
    Ok(m)
}

pub fn write_tensor_map(m: &TensorMap) -> String {
    let mut s = header(Kind::TensorMap);
    let _ = writeln!(s, "dim {}", m.dim());
    let _ = writeln!(s, "shape {} {}", m.domain_degree(), m.codomain_degree());
    for (o, i, c) in m.entries() {
        let w = |w: &Word| w.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "entry {} <- {} = {}", w(o), w(i), fmt_q(c));
    }
    s
}

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let lines = expect_kind(text, Kind::Quiver)?;
    let mut vertices: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for l in &lines {
        let f = l.fields();
        match l.key {
            "vertex" => {
                if f.len() != 1 {
                    return l.err("expected `vertex <name>`");
                }
                if vertices.iter().any(|v| v == f[0]) {
                    return l.err(format!("duplicate vertex {}", f[0]));
                }
                vertices.push(f[0].to_string());
            }
            "edge" => {
                if f.len() != 3 {
                    return l.err("expected `edge <label> <source> <target>`");
                }
                let find = |v: &str| vertices.iter().position(|x| x == v);
                let (Some(source), Some(target)) = (find(f[1]), find(f[2])) else {
                    return l.err("edge endpoints must be declared vertices");
                };
                edges.push(Edge { source, target, label: f[0].to_string() });
            }
            _ => return l.err("unknown field"),
        }
    }
    Quiver::new(vertices, edges).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

pub fn write_quiver(q: &Quiver) -> String {
    let mut s = header(Kind::Quiver);
    for v in q.vertices() {
        let _ = writeln!(s, "vertex {v}");
    }
    for e in q.edges() {
        let _ = writeln!(s, "edge {} {} {}", e.label, q.vertices()[e.source], q.vertices()[e.target]);
    }
    s
}

fn label_index(l: &Line, labels: &[String], name: &str) -> Result<usize> {
    labels.iter().position(|x| x == name).map_or_else(|| l.err(format!("unknown basis element {name:?}")), Ok)
}

fn valid_label(l: &Line, name: &str) -> Result<()> {
    let ok = !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') && name != "1";
    if ok {
        Ok(())
    } else {
        l.err(format!("bad label {name:?}"))
    }
}

fn parse_degree(l: &Line, s: &str) -> Result<Degree> {
    match s.parse::<Degree>() {
        Ok(d) if d.abs() <= 64 => Ok(d),
        _ => l.err(format!("bad degree {s:?}")),
    }
}

pub fn parse_structure(text: &str) -> Result<StructureConstants> {
    let lines = expect_kind(text, Kind::Structure)?;
    let mut labels: Vec<String> = Vec::new();
    let mut degrees = Vec::new();
    let mut entries = Vec::new();
    for l in &lines {
        match l.key {
            "basis" => {
                let f = l.fields();
                if f.len() != 2 {
                    return l.err("expected `basis <label> <degree>`");
                }
                valid_label(l, f[0])?;
                if labels.iter().any(|x| x == f[0]) {
                    return l.err(format!("duplicate basis element {}", f[0]));
                }
                if labels.len() >= MAX_DIM * MAX_DIM {
                    return l.err("too many basis elements");
                }
                labels.push(f[0].to_string());
                degrees.push(parse_degree(l, f[1])?);
            }
            "product" => {
                let Some((lhs, value)) = l.rest.split_once('=') else {
                    return l.err("expected `product <a> <b> <c> = <value>`");
                };
                let f: Vec<&str> = lhs.split_whitespace().collect();
                if f.len() != 3 {
                    return l.err("expected three basis labels");
                }
                let (a, b, k) =
                    (label_index(l, &labels, f[0])?, label_index(l, &labels, f[1])?, label_index(l, &labels, f[2])?);
                if degrees[k] != degrees[a] + degrees[b] {
                    return l.err("product component of the wrong degree");
                }
                entries.push((a, b, k, l.q_at(value)?));
            }
            _ => return l.err("unknown field"),
        }
    }
    StructureConstants::new(labels, degrees, &entries).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

pub fn write_structure(s: &StructureConstants) -> String {
    let mut out = header(Kind::Structure);
    for (l, d) in s.labels().iter().zip(s.degrees()) {
        let _ = writeln!(out, "basis {l} {d}");
    }
    for a in 0..s.dim() {
        for b in 0..s.dim() {
            for (k, c) in s.product(a, b) {
                let lab = s.labels();
                let _ = writeln!(out, "product {} {} {} = {}", lab[a], lab[b], lab[k], fmt_q(&c));
            }
        }
    }
    out
}

pub fn parse_relation(text: &str) -> Result<QuadraticRelation> {
    let lines = expect_kind(text, Kind::Relation)?;
    let mut sym = Symmetry::None;
    let mut coeffs: Option<(&Line, Vec<Q>)> = None;
    for l in &lines {
        match l.key {
            "symmetry" => {
                sym = Symmetry::parse(l.rest).or_else(|_| l.err("expected none, sym or skew"))?;
            }
            "coeffs" => {
                let v = l.fields().into_iter().map(|t| l.q_at(t)).collect::<Result<Vec<_>>>()?;
                coeffs = Some((l, v));
            }
            _ => return l.err("unknown field"),
        }
    }
    let (l, v) = coeffs.ok_or(Error::Parse { line: 0, msg: "missing field \"coeffs\"".into() })?;
    QuadraticRelation::new(sym, v).or_else(|e| l.err(e))
}

pub fn write_relation(r: &QuadraticRelation) -> String {
    let mut s = header(Kind::Relation);
    let _ = writeln!(s, "symmetry {}", r.sym.name());
    let c: Vec<String> = r.coeffs.iter().map(fmt_q).collect();
    let _ = writeln!(s, "coeffs {}", c.join(" "));
    s
}

fn parse_element(l: &Line, s: &str, labels: &[String]) -> Result<Element> {
    let mut e = Element::zero();
    let s = s.trim();
    if s == "0" {
        return Ok(e);
    }
    for term in s.split(';') {
        let f: Vec<&str> = term.split_whitespace().collect();
        if f.len() != 2 {
            return l.err(format!("expected `<coefficient> <monomial>`, got {term:?}"));
        }
        let c = l.q_at(f[0])?;
        let mono: Monomial = if f[1] == "1" {
            Vec::new()
        } else {
            f[1].split('*').map(|g| label_index(l, labels, g).map(Factor::Gen)).collect::<Result<_>>()?
        };
        if mono.len() > MAX_DEGREE {
            return l.err("monomial too long");
        }
        e.add_term(mono, c);
    }
    Ok(e)
}

fn write_element(e: &Element, labels: &[String]) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.terms()
        .map(|(m, c)| {
            let body = if m.is_empty() {
                "1".to_string()
            } else {
                m.iter()
                    .map(|f| match f {
                        Factor::Gen(g) => labels[*g].clone(),
                        Factor::Bracket(..) => unreachable!("concrete elements have no formal brackets"),
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            };
            format!("{} {body}", fmt_q(c))
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}

pub fn parse_brackets(text: &str) -> Result<MultiBracketFamily> {
    let lines = expect_kind(text, Kind::Brackets)?;
    let mut labels: Vec<String> = Vec::new();
    let mut degrees = Vec::new();
    let mut entries = Vec::new();
    for l in &lines {
        match l.key {
            "generator" => {
                let f = l.fields();
                if f.len() != 2 {
                    return l.err("expected `generator <label> <degree>`");
                }
                valid_label(l, f[0])?;
                if labels.iter().any(|x| x == f[0]) {
                    return l.err(format!("duplicate generator {}", f[0]));
                }
                if labels.len() >= MAX_DIM {
                    return l.err("too many generators");
                }
                labels.push(f[0].to_string());
                degrees.push(parse_degree(l, f[1])?);
            }
            "bracket" => {
                let Some((args, value)) = l.rest.split_once('=') else {
                    return l.err("expected `bracket <args> = <element>`");
                };
                let args: Vec<usize> =
                    args.split_whitespace().map(|a| label_index(l, &labels, a)).collect::<Result<_>>()?;
                if args.is_empty() || args.len() > 4 {
                    return l.err("brackets take one to four arguments");
                }
                entries.push((args, parse_element(l, value, &labels)?));
            }
            _ => return l.err("unknown field"),
        }
    }
    MultiBracketFamily::new(labels, degrees, entries).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

pub fn write_brackets(fam: &MultiBracketFamily) -> String {
    let mut s = header(Kind::Brackets);
    for (l, d) in fam.labels().iter().zip(fam.degrees()) {
        let _ = writeln!(s, "generator {l} {d}");
    }
    for (args, e) in fam.entries() {
        let a: Vec<&str> = args.iter().map(|g| fam.labels()[*g].as_str()).collect();
        let _ = writeln!(s, "bracket {} = {}", a.join(" "), write_element(e, fam.labels()));
    }
    s
}

/// `r_n` elements over the basis of `alg`: `r <n> <labels..> = <value>`.
pub fn parse_rn(text: &str, alg: &StructureConstants) -> Result<RnFamily> {
    let lines = expect_kind(text, Kind::Rn)?;
    let mut elements: BTreeMap<usize, GradedTensor> = BTreeMap::new();
    for l in &lines {
        if l.key != "r" {
            return l.err("unknown field");
        }
        let Some((lhs, value)) = l.rest.split_once('=') else {
            return l.err("expected `r <n> <labels> = <value>`");
        };
        let f: Vec<&str> = lhs.split_whitespace().collect();
        let Some((n, labs)) = f.split_first() else {
            return l.err("missing arity");
        };
        let n = l.usize_at(n)?;
        if n == 0 || n > MAX_DEGREE || labs.len() != n {
            return l.err(format!("r_{n} needs {n} basis labels"));
        }
        let w: Word = labs.iter().map(|x| label_index(l, alg.labels(), x)).collect::<Result<_>>()?;
        elements.entry(n).or_default().add_term(w, &l.q_at(value)?);
    }
    RnFamily::new(alg.degrees(), elements).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_map() {
        let m = parse_tensor_map("format yangbax/1\nkind tensor-map\ndim 2\n").unwrap();
        assert!(m.is_zero());
        assert_eq!((m.dim(), m.domain_degree(), m.codomain_degree()), (2, 2, 2));
    }

    #[test]
    fn located_errors() {
        let text = "format yangbax/1\nkind tensor-map\ndim 2\n\nentry 0 0 <- 0 0 = 1/0\n";
        match parse_tensor_map(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 5);
                assert!(msg.contains("entry"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_tensor_map("kind tensor-map\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn a2_quiver() {
        let q = parse_quiver("format yangbax/1\nkind quiver\nvertex 1\nvertex 2\nedge a 1 2\n").unwrap();
        assert_eq!(q.vertices().len(), 2);
        assert_eq!(q.edges().len(), 1);
    }
}
