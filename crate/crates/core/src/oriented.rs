//! The oriented Brauer category with circle value `m - n`, its additive
//! closure, and the embedding `Ψ` of the Brauer algebra into it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::BrauerElement;
use crate::diagram::GeneralizedDiagram;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::superalgebra::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Up,
    Down,
    Circle,
}

impl Orientation {
    pub fn symbol(self) -> char {
        match self {
            Orientation::Up => '^',
            Orientation::Down => 'v',
            Orientation::Circle => 'o',
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientationSeq(pub Vec<Orientation>);

impl OrientationSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, o: Orientation) -> usize {
        self.0.iter().filter(|&&x| x == o).count()
    }

    pub fn has_circle(&self) -> bool {
        self.0.contains(&Orientation::Circle)
    }

    /// The sequence with every `o` deleted.
    pub fn reduce(&self) -> Self {
        Self(self.0.iter().copied().filter(|&o| o != Orientation::Circle).collect())
    }

    /// All sequences of length `d` over `^ v` (and `o` in odd mode).
    pub fn all(d: usize, mode: Mode) -> Vec<Self> {
        let alphabet: &[Orientation] = match mode {
            Mode::Even => &[Orientation::Up, Orientation::Down],
            Mode::Odd => &[Orientation::Up, Orientation::Down, Orientation::Circle],
        };
        let mut out = vec![Self::default()];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|s| {
                    alphabet.iter().map(move |&o| {
                        let mut next = s.0.clone();
                        next.push(o);
                        Self(next)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for OrientationSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = self.0.iter().map(|o| o.symbol()).collect();
        f.write_str(&text)
    }
}

impl FromStr for OrientationSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '^' => Ok(Orientation::Up),
                'v' => Ok(Orientation::Down),
                'o' => Ok(Orientation::Circle),
                other => Err(Error::Parse(format!("bad orientation symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// A generalized diagram from `bottom` (source) to `top` (target).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedMorphism {
    pub top: OrientationSeq,
    pub diagram: GeneralizedDiagram,
    pub bottom: OrientationSeq,
}

impl OrientedMorphism {
    pub fn new(top: OrientationSeq, diagram: GeneralizedDiagram, bottom: OrientationSeq) -> Result<Self> {
        if !validate(&top, &diagram, &bottom)? {
            return Err(Error::InvalidOrientation(format!("{top} | {diagram} | {bottom}")));
        }
        Ok(Self { top, diagram, bottom })
    }

    pub fn identity(s: &OrientationSeq) -> Self {
        let d = s.len();
        let mut partner: Vec<usize> = (0..2 * d).map(|i| if i < d { i + d } else { i - d }).collect();
        for (k, &o) in s.0.iter().enumerate() {
            if o == Orientation::Circle {
                partner[k] = k;
                partner[d + k] = d + k;
            }
        }
        Self { top: s.clone(), diagram: GeneralizedDiagram::from_partner(d, d, partner), bottom: s.clone() }
    }

    /// Orientation of the vertex with internal index `i`.
    pub(crate) fn orientation_at(&self, i: usize) -> Orientation {
        let top = self.diagram.top();
        if i < top {
            self.top.0[i]
        } else {
            self.bottom.0[i - top]
        }
    }

    /// Deletes every `o` together with its singleton and renumbers.
    pub fn reduce(&self) -> Self {
        let (top, bottom) = (self.diagram.top(), self.diagram.bottom());
        let keep: Vec<usize> = (0..top + bottom).filter(|&i| self.orientation_at(i) != Orientation::Circle).collect();
        let mut new_index = vec![usize::MAX; top + bottom];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let partner = self.diagram.partner();
        let new_partner: Vec<usize> = keep.iter().map(|&i| new_index[partner[i]]).collect();
        let new_top = keep.iter().filter(|&&i| i < top).count();
        let diagram = GeneralizedDiagram::from_partner(new_top, keep.len() - new_top, new_partner);
        Self { top: self.top.reduce(), diagram, bottom: self.bottom.reduce() }
    }
}

impl fmt::Display for OrientedMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.top, self.diagram, self.bottom)
    }
}

/// Whether `(t, b, s)` is an oriented generalized Brauer diagram: horizontal
/// pairs join `^` to `v`, vertical pairs join equal symbols, and singletons
/// are exactly the `o` vertices.
pub fn validate(t: &OrientationSeq, b: &GeneralizedDiagram, s: &OrientationSeq) -> Result<bool> {
    if t.len() != b.top() || s.len() != b.bottom() {
        return Err(Error::DimensionMismatch(format!(
            "sequences of lengths {} and {} for a diagram with {} top and {} bottom vertices",
            t.len(),
            s.len(),
            b.top(),
            b.bottom()
        )));
    }
    let orient = |i: usize| if i < b.top() { t.0[i] } else { s.0[i - b.top()] };
    for (i, &p) in b.partner().iter().enumerate() {
        let (oi, op) = (orient(i), orient(p));
        let ok = if i == p {
            oi == Orientation::Circle
        } else if oi == Orientation::Circle || op == Orientation::Circle {
            false
        } else if (i < b.top()) == (p < b.top()) {
            oi != op
        } else {
            oi == op
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `g ∘ f` (`g` on top): the glued diagram and the factor `circle^loops`.
pub fn compose_oriented(
    g: &OrientedMorphism,
    f: &OrientedMorphism,
    circle: &Scalar,
) -> Result<(OrientedMorphism, Scalar)> {
    if g.bottom != f.top {
        return Err(Error::IncompatibleSequences(format!(
            "source {} of g differs from target {} of f",
            g.bottom, f.top
        )));
    }
    let r = g.diagram.compose(&f.diagram)?;
    let out = OrientedMorphism { top: g.top.clone(), diagram: r.diagram, bottom: f.bottom.clone() };
    debug_assert!(validate(&out.top, &out.diagram, &out.bottom).unwrap_or(false));
    Ok((out, scalar::pow(circle, r.loops)))
}

/// All oriented diagrams from `s` (bottom) to `t` (top).
pub fn hom_basis(s: &OrientationSeq, t: &OrientationSeq) -> Vec<OrientedMorphism> {
    let (top, bottom) = (t.len(), s.len());
    let orient = |i: usize| if i < top { t.0[i] } else { s.0[i - top] };
    let mut partner: Vec<usize> =
        (0..top + bottom).map(|i| if orient(i) == Orientation::Circle { i } else { usize::MAX }).collect();
    let compatible = |a: usize, b: usize| {
        if (a < top) == (b < top) {
            orient(a) != orient(b)
        } else {
            orient(a) == orient(b)
        }
    };
    let mut out = Vec::new();
    fn rec(partner: &mut Vec<usize>, compatible: &dyn Fn(usize, usize) -> bool, emit: &mut dyn FnMut(&[usize])) {
        let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
            emit(partner);
            return;
        };
        for other in first + 1..partner.len() {
            if partner[other] != usize::MAX || !compatible(first, other) {
                continue;
            }
            partner[first] = other;
            partner[other] = first;
            rec(partner, compatible, emit);
            partner[first] = usize::MAX;
            partner[other] = usize::MAX;
        }
    }
    rec(&mut partner, &compatible, &mut |p: &[usize]| {
        out.push(OrientedMorphism {
            top: t.clone(),
            diagram: GeneralizedDiagram::from_partner(top, bottom, p.to_vec()),
            bottom: s.clone(),
        })
    });
    out.sort();
    out
}

pub fn hom_dim(s: &OrientationSeq, t: &OrientationSeq) -> usize {
    hom_basis(s, t).len()
}

/// A counting criterion that forces `Hom(s, t) = 0`.
///
/// Cups and caps each carry one `^` and one `v` while through strands keep
/// their symbol, so a morphism needs `#^(t) - #^(s) = #v(t) - #v(s)`. For
/// sequences of equal length this reads: `ℓ = #o(s) - #o(t)` is even and
/// `ℓ/2 = #^(t) - #^(s)`.
pub fn hom_vanishing_predicate(s: &OrientationSeq, t: &OrientationSeq) -> bool {
    let up = t.count(Orientation::Up) as i64 - s.count(Orientation::Up) as i64;
    if s.len() == t.len() {
        let ell = s.count(Orientation::Circle) as i64 - t.count(Orientation::Circle) as i64;
        return ell % 2 != 0 || ell / 2 != up;
    }
    let down = t.count(Orientation::Down) as i64 - s.count(Orientation::Down) as i64;
    up != down
}

type Combination = BTreeMap<GeneralizedDiagram, Scalar>;

fn add_into(target: &mut Combination, b: GeneralizedDiagram, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match target.entry(b) {
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

/// An endomorphism of `⊕_s s` in the additive closure: entry `(t, s)` is a
/// combination of oriented diagrams from `s` to `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatEndo {
    d: usize,
    mode: Mode,
    entries: BTreeMap<(OrientationSeq, OrientationSeq), Combination>,
}

impl MatEndo {
    pub fn zero(d: usize, mode: Mode) -> Self {
        Self { d, mode, entries: BTreeMap::new() }
    }

    pub fn identity(d: usize, mode: Mode) -> Self {
        psi_embed(&GeneralizedDiagram::identity(d), mode).expect("identity is a Brauer diagram")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn entries(&self) -> &BTreeMap<(OrientationSeq, OrientationSeq), Combination> {
        &self.entries
    }

    /// Number of nonzero `(t, s)` cells.
    pub fn nonzero_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, t: &OrientationSeq, s: &OrientationSeq) -> Option<&Combination> {
        self.entries.get(&(t.clone(), s.clone()))
    }

    /// Every stored term as an oriented morphism with its coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (OrientedMorphism, &Scalar)> + '_ {
        self.entries.iter().flat_map(|((t, s), comb)| {
            comb.iter()
                .map(move |(b, c)| (OrientedMorphism { top: t.clone(), diagram: b.clone(), bottom: s.clone() }, c))
        })
    }

    /// Adds `c · morphism` to the matching cell.
    pub fn add_term(&mut self, morphism: OrientedMorphism, c: Scalar) -> Result<()> {
        if morphism.top.len() != self.d || morphism.bottom.len() != self.d {
            return Err(Error::DimensionMismatch(format!("morphism {morphism} is not on {} strands", self.d)));
        }
        if self.mode == Mode::Even && (morphism.top.has_circle() || morphism.bottom.has_circle()) {
            return Err(Error::ModeMismatch(format!("{morphism} uses o in even mode")));
        }
        if !validate(&morphism.top, &morphism.diagram, &morphism.bottom)? {
            return Err(Error::InvalidOrientation(morphism.to_string()));
        }
        let key = (morphism.top, morphism.bottom);
        let cell = self.entries.entry(key.clone()).or_default();
        add_into(cell, morphism.diagram, c);
        if cell.is_empty() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(format!("{} versus {}", self.mode, other.mode)));
        }
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!("d = {} versus d = {}", self.d, other.d)));
        }
        Ok(())
    }
}

/// `Ψ(b)`: in cell `(t, s)` the unique subdiagram of `b` oriented from `s` to
/// `t`, if there is one. Even mode uses `b` itself and `o`-free sequences only.
pub fn psi_embed(b: &GeneralizedDiagram, mode: Mode) -> Result<MatEndo> {
    if !b.is_square() || !b.is_brauer() {
        return Err(Error::Parse(format!("{b} is not a Brauer diagram")));
    }
    let d = b.d();
    let mut out = MatEndo::zero(d, mode);
    let candidates = match mode {
        Mode::Odd => b.subdiagrams(),
        Mode::Even => vec![b.clone()],
    };
    for q in candidates {
        let pairs: Vec<(usize, usize)> = q.pair_indices().collect();
        for mask in 0u64..1 << pairs.len() {
            let mut top = vec![Orientation::Circle; d];
            let mut bottom = vec![Orientation::Circle; d];
            let mut set = |i: usize, o: Orientation| {
                if i < d {
                    top[i] = o;
                } else {
                    bottom[i - d] = o;
                }
            };
            for (k, &(a, c)) in pairs.iter().enumerate() {
                let flip = mask >> k & 1 == 1;
                let (oa, oc) = if q.vertex(a).side == q.vertex(c).side {
                    if flip {
                        (Orientation::Down, Orientation::Up)
                    } else {
                        (Orientation::Up, Orientation::Down)
                    }
                } else if flip {
                    (Orientation::Down, Orientation::Down)
                } else {
                    (Orientation::Up, Orientation::Up)
                };
                set(a, oa);
                set(c, oc);
            }
            let key = (OrientationSeq(top), OrientationSeq(bottom));
            let cell = out.entries.entry(key).or_default();
            debug_assert!(cell.is_empty());
            cell.insert(q.clone(), scalar::one());
        }
    }
    Ok(out)
}

/// `Ψ` extended linearly to the Brauer algebra.
pub fn psi_element(x: &BrauerElement, mode: Mode) -> Result<MatEndo> {
    let mut out = MatEndo::zero(x.d(), mode);
    for (b, c) in x.terms() {
        out = mat_add(&out, &mat_scale(&psi_embed(b, mode)?, c))?;
    }
    Ok(out)
}

/// Matrix product `A·B` with each closed circle evaluated to `circle`.
pub fn mat_compose(a: &MatEndo, b: &MatEndo, circle: &Scalar) -> Result<MatEndo> {
    a.check_compatible(b)?;
    let mut by_row: BTreeMap<&OrientationSeq, Vec<(&OrientationSeq, &Combination)>> = BTreeMap::new();
    for ((s, r), comb) in &b.entries {
        by_row.entry(s).or_default().push((r, comb));
    }
    let mut out = MatEndo::zero(a.d, a.mode);
    for ((t, s), left) in &a.entries {
        let Some(rights) = by_row.get(s) else { continue };
        for (r, right) in rights {
            let key = ((*t).clone(), (*r).clone());
            let mut cell = out.entries.remove(&key).unwrap_or_default();
            for (x, cx) in left {
                for (y, cy) in right.iter() {
                    let glued = x.compose(y)?;
                    add_into(&mut cell, glued.diagram, scalar::pow(circle, glued.loops) * cx * cy);
                }
            }
            if !cell.is_empty() {
                out.entries.insert(key, cell);
            }
        }
    }
    Ok(out)
}

pub fn mat_add(a: &MatEndo, b: &MatEndo) -> Result<MatEndo> {
    a.check_compatible(b)?;
    let mut out = a.clone();
    for (key, comb) in &b.entries {
        let mut cell = out.entries.remove(key).unwrap_or_default();
        for (x, c) in comb {
            add_into(&mut cell, x.clone(), c.clone());
        }
        if !cell.is_empty() {
            out.entries.insert(key.clone(), cell);
        }
    }
    Ok(out)
}

pub fn mat_scale(a: &MatEndo, factor: &Scalar) -> MatEndo {
    if factor.is_zero() {
        return MatEndo::zero(a.d, a.mode);
    }
    let mut out = a.clone();
    for comb in out.entries.values_mut() {
        for c in comb.values_mut() {
            *c *= factor;
        }
    }
    out
}

/// `δ` of the Brauer algebra that `Ψ` realizes for circle value `c`.
pub fn psi_delta(circle: &Scalar, mode: Mode) -> Scalar {
    let two = scalar::int(2) * circle;
    match mode {
        Mode::Even => two,
        Mode::Odd => two + scalar::one(),
    }
}
