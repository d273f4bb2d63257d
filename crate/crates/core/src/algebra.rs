//! The Brauer algebra `Br_d(δ)` over the rationals.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::diagram::{enumerate_brauer_with_limit, GeneralizedDiagram, GeneratorKind};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Largest `d` accepted by [`verify_presentation`].
pub const PRESENTATION_LIMIT: usize = 5;

/// A rational combination of Brauer diagrams on `d` strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerElement {
    d: usize,
    terms: BTreeMap<GeneralizedDiagram, Scalar>,
}

impl BrauerElement {
    pub fn zero(d: usize) -> Self {
        Self { d, terms: BTreeMap::new() }
    }

    pub fn identity(d: usize) -> Self {
        Self::basis(GeneralizedDiagram::identity(d)).expect("identity is a Brauer diagram")
    }

    /// The basis element of a singleton-free square diagram.
    pub fn basis(b: GeneralizedDiagram) -> Result<Self> {
        Self::from_terms(b.top(), [(b, scalar::one())])
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (GeneralizedDiagram, Scalar)>) -> Result<Self> {
        let mut out = Self::zero(d);
        for (b, c) in terms {
            if !b.is_square() || b.top() != d {
                return Err(Error::DimensionMismatch(format!("diagram {b} does not have {d} strands")));
            }
            if !b.is_brauer() {
                return Err(Error::Parse(format!("{b} has singletons and is not a Brauer diagram")));
            }
            out.add_term(b, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, b: GeneralizedDiagram, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<GeneralizedDiagram, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, b: &GeneralizedDiagram) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_d(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(self.d);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c * factor);
        }
        out
    }

    fn check_d(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!("d = {} versus d = {}", self.d, other.d)));
        }
        Ok(())
    }

    /// Serializes as `{diagram literal: "p/q"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map = self.terms.iter().map(|(b, c)| (b.to_string(), serde_json::Value::String(scalar::format(c))));
        serde_json::Value::Object(map.collect())
    }
}

/// `x·y`, with `x` drawn on top of `y` and each removed loop giving a factor `δ`.
pub fn multiply(x: &BrauerElement, y: &BrauerElement, delta: &Scalar) -> Result<BrauerElement> {
    x.check_d(y)?;
    let mut out = BrauerElement::zero(x.d);
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let r = a.compose(b)?;
            out.add_term(r.diagram, scalar::pow(delta, r.loops) * ca * cb);
        }
    }
    Ok(out)
}

impl fmt::Display for BrauerElement {
    /// One `coeff * diagram` line per term, in canonical order; `0` if empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let lines: Vec<String> = self.terms.iter().map(|(b, c)| format!("{} * {b}", scalar::format(c))).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub index: usize,
}

impl Generator {
    pub fn s(index: usize) -> Self {
        Self { kind: GeneratorKind::S, index }
    }

    pub fn e(index: usize) -> Self {
        Self { kind: GeneratorKind::E, index }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::S => write!(f, "s{}", self.index),
            GeneratorKind::E => write!(f, "e{}", self.index),
            GeneratorKind::Identity => write!(f, "1"),
        }
    }
}

/// A word in `s_i`, `e_i`, e.g. `"s1 e2"` or `"s1*e2"`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn max_index(&self) -> usize {
        self.0.iter().map(|g| g.index).max().unwrap_or(0)
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for token in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let kind = match token.chars().next() {
                Some('s') => GeneratorKind::S,
                Some('e') => GeneratorKind::E,
                _ => return Err(Error::Parse(format!("bad generator {token:?}"))),
            };
            let index: usize = token[1..].parse().map_err(|_| Error::Parse(format!("bad generator {token:?}")))?;
            if index == 0 {
                return Err(Error::Parse(format!("generator indices start at 1: {token:?}")));
            }
            out.push(Generator { kind, index });
        }
        Ok(Self(out))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", tokens.join(" "))
    }
}

pub fn generator_element(d: usize, g: Generator) -> Result<BrauerElement> {
    BrauerElement::basis(GeneralizedDiagram::generator(d, g.kind, g.index)?)
}

/// Left-to-right product of the generators in `w`.
pub fn evaluate_word(w: &GeneratorWord, d: usize, delta: &Scalar) -> Result<BrauerElement> {
    let mut acc = BrauerElement::identity(d);
    for &g in &w.0 {
        acc = multiply(&acc, &generator_element(d, g)?, delta)?;
    }
    Ok(acc)
}

/// One instance of a defining relation `lhs = rhs`, both sides given as words
/// with an optional scalar on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub name: &'static str,
    pub lhs: GeneratorWord,
    pub rhs: GeneratorWord,
    pub rhs_scale: RhsScale,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhsScale {
    One,
    Delta,
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |w: &GeneratorWord| if w.0.is_empty() { "1".to_string() } else { w.to_string() };
        let scale = match self.rhs_scale {
            RhsScale::One => "",
            RhsScale::Delta => "delta ",
        };
        write!(f, "{}: {} = {scale}{}", self.name, side(&self.lhs), side(&self.rhs))
    }
}

fn s(i: usize) -> Generator {
    Generator::s(i)
}

fn e(i: usize) -> Generator {
    Generator::e(i)
}

/// Every instance of the defining relations of `Br_d(δ)` with indices in `1..d`.
pub fn relation_instances(d: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    let mut push = |name, lhs: Vec<Generator>, rhs: Vec<Generator>, rhs_scale| {
        out.push(RelationInstance { name, lhs: GeneratorWord(lhs), rhs: GeneratorWord(rhs), rhs_scale });
    };
    let n = d.saturating_sub(1);
    for i in 1..=n {
        push("s_i^2 = 1", vec![s(i), s(i)], vec![], RhsScale::One);
        push("e_i^2 = delta e_i", vec![e(i), e(i)], vec![e(i)], RhsScale::Delta);
        push("s_i e_i = e_i", vec![s(i), e(i)], vec![e(i)], RhsScale::One);
        push("e_i s_i = e_i", vec![e(i), s(i)], vec![e(i)], RhsScale::One);
        for j in 1..=n {
            if i.abs_diff(j) > 1 {
                push("s_i s_j = s_j s_i", vec![s(i), s(j)], vec![s(j), s(i)], RhsScale::One);
                push("e_i e_j = e_j e_i", vec![e(i), e(j)], vec![e(j), e(i)], RhsScale::One);
                push("s_i e_j = e_j s_i", vec![s(i), e(j)], vec![e(j), s(i)], RhsScale::One);
            }
        }
    }
    for k in 1..n {
        push(
            "s_k s_k+1 s_k = s_k+1 s_k s_k+1",
            vec![s(k), s(k + 1), s(k)],
            vec![s(k + 1), s(k), s(k + 1)],
            RhsScale::One,
        );
        push("e_k e_k+1 e_k = e_k", vec![e(k), e(k + 1), e(k)], vec![e(k)], RhsScale::One);
        push("e_k+1 e_k e_k+1 = e_k+1", vec![e(k + 1), e(k), e(k + 1)], vec![e(k + 1)], RhsScale::One);
        push("s_k e_k+1 e_k = s_k+1 e_k", vec![s(k), e(k + 1), e(k)], vec![s(k + 1), e(k)], RhsScale::One);
        push("s_k+1 e_k e_k+1 = s_k e_k+1", vec![s(k + 1), e(k), e(k + 1)], vec![s(k), e(k + 1)], RhsScale::One);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub d: usize,
    pub delta: Scalar,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PresentationReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every relation instance by diagram multiplication.
pub fn verify_presentation(d: usize, delta: &Scalar) -> Result<PresentationReport> {
    if d > PRESENTATION_LIMIT {
        return Err(Error::LimitExceeded { d, limit: PRESENTATION_LIMIT });
    }
    let instances = relation_instances(d);
    let mut failures = Vec::new();
    for rel in &instances {
        let lhs = evaluate_word(&rel.lhs, d, delta)?;
        let mut rhs = evaluate_word(&rel.rhs, d, delta)?;
        if rel.rhs_scale == RhsScale::Delta {
            rhs = rhs.scale(delta);
        }
        if lhs != rhs {
            failures.push(rel.to_string());
        }
    }
    Ok(PresentationReport { d, delta: delta.clone(), checked: instances.len(), failures })
}

/// Basis `B[d]` of `Br_d(δ)` as elements.
pub fn basis_elements(d: usize, limit: usize) -> Result<Vec<BrauerElement>> {
    enumerate_brauer_with_limit(d, limit)?.into_iter().map(BrauerElement::basis).collect()
}

/// `true` iff `x` is a single diagram with coefficient one.
pub fn is_basis_element(x: &BrauerElement) -> bool {
    x.terms.len() == 1 && x.terms.values().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn word(d: usize, text: &str, delta: i64) -> BrauerElement {
        evaluate_word(&text.parse().unwrap(), d, &int(delta)).unwrap()
    }

    fn diag(text: &str) -> BrauerElement {
        BrauerElement::basis(text.parse().unwrap()).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(word(2, "e1 e1", 5), diag("(1,2)(1*,2*)").scale(&int(5)));
        assert_eq!(word(2, "s1 e1", 3), diag("(1,2)(1*,2*)"));
        assert_eq!(word(3, "e1 e2 e1", 7), word(3, "e1", 0));
        assert!(word(2, "e1 e1", 0).is_zero());
    }

    #[test]
    fn word_examples() {
        assert_eq!(word(3, "", 2), BrauerElement::identity(3));
        assert_eq!(word(3, "e1*e2", 2), diag("(1,2)(3,1*)(2*,3*)"));
        assert!("x1".parse::<GeneratorWord>().is_err());
        assert!(evaluate_word(&"s3".parse().unwrap(), 3, &int(1)).is_err());
    }

    #[test]
    fn presentation_holds() {
        for (d, delta) in [(2, 0), (3, 1), (4, -3)] {
            let report = verify_presentation(d, &int(delta)).unwrap();
            assert!(report.all_hold(), "{:?}", report.failures);
            assert!(report.checked > 0);
        }
        assert!(verify_presentation(6, &int(1)).is_err());
    }

    #[test]
    fn printed_form() {
        let x = word(2, "e1 e1", 2).add(&word(2, "s1", 0).scale(&(int(-1) / int(3)))).unwrap();
        assert_eq!(x.to_string(), "2 * (1,2)(1*,2*)\n-1/3 * (1,2*)(2,1*)");
        assert_eq!(BrauerElement::zero(2).to_string(), "0");
    }
}
