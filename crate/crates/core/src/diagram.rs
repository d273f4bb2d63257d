//! Brauer and generalized Brauer diagrams.
//!
//! A diagram has `top` vertices `1..=top` and `bottom` vertices
//! `1*..=bottom*`, partitioned into pairs and singletons. Internally vertex
//! `k` on top is index `k - 1` and vertex `k*` is `top + k - 1`; the partition
//! is stored as a partner array where a singleton is its own partner, which
//! makes the representation canonical.
//!
//! Crossings are counted in the planar drawing with all vertices on a circle
//! in the order `1*, 2*, ..., bottom*, top, ..., 2, 1`: two pairs cross iff
//! their endpoints interleave.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default upper bound on `d` for full enumeration of `B[d]`.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Top,
    Bottom,
}

/// A vertex `pos` (1-based) on the top row, or `pos*` on the bottom row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub pos: usize,
    pub side: Side,
}

impl Vertex {
    pub fn top(pos: usize) -> Self {
        Self { pos, side: Side::Top }
    }

    pub fn bottom(pos: usize) -> Self {
        Self { pos, side: Side::Bottom }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Top => write!(f, "{}", self.pos),
            Side::Bottom => write!(f, "{}*", self.pos),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Pair(Vertex, Vertex),
    Single(Vertex),
}

impl Block {
    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            Block::Pair(a, b) => vec![a, b],
            Block::Single(a) => vec![a],
        }
    }
}

/// A horizontal pair, reported by its left (smaller) and right endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub left: Vertex,
    pub right: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapsAndCups {
    /// Pairs `{i*, j*}` on the bottom row.
    pub caps: Vec<Arc>,
    /// Pairs `{i, j}` on the top row.
    pub cups: Vec<Arc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Identity,
    S,
    E,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedDiagram {
    top: usize,
    bottom: usize,
    partner: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResult {
    pub diagram: GeneralizedDiagram,
    /// Closed loops removed from the middle row.
    pub loops: usize,
}

impl GeneralizedDiagram {
    /// Builds a diagram from its blocks; every vertex must appear exactly once.
    pub fn from_blocks(top: usize, bottom: usize, blocks: &[Block]) -> Result<Self> {
        const UNSET: usize = usize::MAX;
        let mut partner = vec![UNSET; top + bottom];
        let index = |v: Vertex| -> Result<usize> {
            let limit = match v.side {
                Side::Top => top,
                Side::Bottom => bottom,
            };
            if v.pos == 0 || v.pos > limit {
                return Err(Error::IndexOutOfRange { index: v.pos, max: limit });
            }
            Ok(match v.side {
                Side::Top => v.pos - 1,
                Side::Bottom => top + v.pos - 1,
            })
        };
        for block in blocks {
            let (a, b) = match *block {
                Block::Pair(x, y) => (index(x)?, index(y)?),
                Block::Single(x) => {
                    let i = index(x)?;
                    (i, i)
                }
            };
            if partner[a] != UNSET || partner[b] != UNSET || (a == b && matches!(block, Block::Pair(..))) {
                return Err(Error::Parse(format!("vertex used twice in block {block:?}")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&UNSET) {
            return Err(Error::Parse("some vertex belongs to no block".into()));
        }
        Ok(Self { top, bottom, partner })
    }

    pub(crate) fn from_partner(top: usize, bottom: usize, partner: Vec<usize>) -> Self {
        debug_assert_eq!(partner.len(), top + bottom);
        debug_assert!(partner.iter().enumerate().all(|(i, &p)| partner[p] == i));
        Self { top, bottom, partner }
    }

    pub fn identity(d: usize) -> Self {
        let partner = (0..2 * d).map(|i| if i < d { i + d } else { i - d }).collect();
        Self { top: d, bottom: d, partner }
    }

    /// `identity`, `s_i` or `e_i` on `d` strands (`i` is 1-based).
    pub fn generator(d: usize, kind: GeneratorKind, i: usize) -> Result<Self> {
        let mut g = Self::identity(d);
        if kind == GeneratorKind::Identity {
            return Ok(g);
        }
        if i == 0 || i + 1 > d {
            return Err(Error::IndexOutOfRange { index: i, max: d.saturating_sub(1) });
        }
        let (a, b) = (i - 1, i);
        let (a_star, b_star) = (d + a, d + b);
        let p = &mut g.partner;
        match kind {
            GeneratorKind::S => {
                p[a] = b_star;
                p[b_star] = a;
                p[b] = a_star;
                p[a_star] = b;
            }
            GeneratorKind::E => {
                p[a] = b;
                p[b] = a;
                p[a_star] = b_star;
                p[b_star] = a_star;
            }
            GeneratorKind::Identity => unreachable!(),
        }
        Ok(g)
    }

    /// An all-singleton diagram.
    pub fn empty(top: usize, bottom: usize) -> Self {
        Self { top, bottom, partner: (0..top + bottom).collect() }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Strand count of a square diagram.
    pub fn d(&self) -> usize {
        debug_assert_eq!(self.top, self.bottom);
        self.top
    }

    pub fn is_square(&self) -> bool {
        self.top == self.bottom
    }

    pub(crate) fn partner(&self) -> &[usize] {
        &self.partner
    }

    pub(crate) fn vertex(&self, index: usize) -> Vertex {
        if index < self.top {
            Vertex::top(index + 1)
        } else {
            Vertex::bottom(index - self.top + 1)
        }
    }

    pub(crate) fn index_of(&self, v: Vertex) -> usize {
        match v.side {
            Side::Top => v.pos - 1,
            Side::Bottom => self.top + v.pos - 1,
        }
    }

    /// Position of a vertex on the boundary circle `1*, ..., bottom*, top, ..., 1`.
    pub(crate) fn circle_position(&self, index: usize) -> usize {
        if index < self.top {
            self.bottom + self.top - 1 - index
        } else {
            index - self.top
        }
    }

    pub fn partner_of(&self, v: Vertex) -> Option<Vertex> {
        let i = self.index_of(v);
        let p = self.partner[i];
        (p != i).then(|| self.vertex(p))
    }

    pub fn is_brauer(&self) -> bool {
        self.partner.iter().enumerate().all(|(i, &p)| i != p)
    }

    pub fn singleton_count(&self) -> usize {
        self.partner.iter().enumerate().filter(|(i, p)| i == *p).count()
    }

    pub fn pair_count(&self) -> usize {
        (self.partner.len() - self.singleton_count()) / 2
    }

    /// Number of pairs joining a top vertex to a bottom vertex.
    pub fn vertical_strands(&self) -> usize {
        (0..self.top).filter(|&i| self.partner[i] >= self.top).count()
    }

    /// Pairs as index tuples `(a, b)` with `a < b`.
    pub(crate) fn pair_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner.iter().enumerate().filter(|(i, p)| *i < **p).map(|(i, p)| (i, *p))
    }

    /// Blocks sorted by least vertex in the order `1* < ... < d* < d < ... < 1`,
    /// each block listing its vertices in that order.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out: Vec<(usize, Block)> = Vec::new();
        for (i, &p) in self.partner.iter().enumerate() {
            if p == i {
                out.push((self.circle_position(i), Block::Single(self.vertex(i))));
            } else if i < p {
                let (ci, cp) = (self.circle_position(i), self.circle_position(p));
                let block = if ci < cp {
                    Block::Pair(self.vertex(i), self.vertex(p))
                } else {
                    Block::Pair(self.vertex(p), self.vertex(i))
                };
                out.push((ci.min(cp), block));
            }
        }
        out.sort_by_key(|(k, _)| *k);
        out.into_iter().map(|(_, b)| b).collect()
    }

    /// Glues `self` on top of `lower` (bottom of `self` = top of `lower`),
    /// removing closed middle loops and middle singletons.
    pub fn compose(&self, lower: &Self) -> Result<CompositionResult> {
        if self.bottom != lower.top {
            return Err(Error::DimensionMismatch(format!(
                "upper diagram has {} bottom vertices, lower has {} top vertices",
                self.bottom, lower.top
            )));
        }
        let (ut, mid, lb) = (self.top, self.bottom, lower.bottom);
        // Result indices: top of upper 0..ut, bottom of lower ut..ut+lb.
        let mut partner = vec![usize::MAX; ut + lb];
        let mut visited_mid = vec![false; mid];

        #[derive(Clone, Copy)]
        enum Pos {
            Upper(usize),
            Lower(usize),
        }
        // Follows a chain starting by entering diagram `pos` at the given index.
        let walk = |mut pos: Pos, visited_mid: &mut Vec<bool>| -> Option<usize> {
            loop {
                match pos {
                    Pos::Upper(i) => {
                        let p = self.partner[i];
                        if p == i {
                            return None;
                        }
                        if p < ut {
                            return Some(p);
                        }
                        let m = p - ut;
                        visited_mid[m] = true;
                        pos = Pos::Lower(m);
                    }
                    Pos::Lower(i) => {
                        let p = lower.partner[i];
                        if p == i {
                            return None;
                        }
                        if p >= mid {
                            return Some(ut + p - mid);
                        }
                        visited_mid[p] = true;
                        pos = Pos::Upper(ut + p);
                    }
                }
            }
        };

        for t in 0..ut {
            if partner[t] != usize::MAX {
                continue;
            }
            match walk(Pos::Upper(t), &mut visited_mid) {
                Some(end) => {
                    partner[t] = end;
                    partner[end] = t;
                }
                None => partner[t] = t,
            }
        }
        for b in 0..lb {
            let idx = ut + b;
            if partner[idx] != usize::MAX {
                continue;
            }
            match walk(Pos::Lower(mid + b), &mut visited_mid) {
                Some(end) => {
                    partner[idx] = end;
                    partner[end] = idx;
                }
                None => partner[idx] = idx,
            }
        }

        // What remains in the middle is closed loops or chains ending in singletons.
        let mut loops = 0;
        for start in 0..mid {
            if visited_mid[start] {
                continue;
            }
            let mut closed = true;
            // Walk in both directions from the middle vertex.
            for first_upper in [true, false] {
                let mut m = start;
                let mut upper = first_upper;
                loop {
                    visited_mid[m] = true;
                    let next = if upper {
                        let i = ut + m;
                        let p = self.partner[i];
                        if p == i || p < ut {
                            closed &= p != i;
                            break;
                        }
                        p - ut
                    } else {
                        let p = lower.partner[m];
                        if p == m || p >= mid {
                            closed &= p != m;
                            break;
                        }
                        p
                    };
                    if next == start {
                        break;
                    }
                    m = next;
                    upper = !upper;
                }
            }
            if closed {
                loops += 1;
            }
        }

        Ok(CompositionResult { diagram: Self::from_partner(ut, lb, partner), loops })
    }

    /// Every refinement obtained by dissolving a subset of the pairs into
    /// singletons; `2^pairs` diagrams, starting with `self`.
    pub fn subdiagrams(&self) -> Vec<Self> {
        let pairs: Vec<(usize, usize)> = self.pair_indices().collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let mut partner = self.partner.clone();
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        partner[a] = a;
                        partner[b] = b;
                    }
                }
                Self { top: self.top, bottom: self.bottom, partner }
            })
            .collect()
    }

    /// `self ⊲ other`: every pair of `self` is a pair of `other`.
    pub fn is_subdiagram_of(&self, other: &Self) -> bool {
        self.top == other.top
            && self.bottom == other.bottom
            && self.partner.iter().enumerate().all(|(i, &p)| p == i || other.partner[i] == p)
    }

    pub(crate) fn pairs_cross(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        let (mut lo, mut hi) = (self.circle_position(a.0), self.circle_position(a.1));
        if lo > hi {
            std::mem::swap(&mut lo, &mut hi);
        }
        let inside = |x: usize| lo < x && x < hi;
        inside(self.circle_position(b.0)) != inside(self.circle_position(b.1))
    }

    /// Unordered pairs of crossing blocks in the canonical planar drawing.
    pub fn crossings(&self) -> Vec<(Block, Block)> {
        let pairs: Vec<(usize, usize)> = self.pair_indices().collect();
        let block = |(a, b): (usize, usize)| Block::Pair(self.vertex(a), self.vertex(b));
        let mut out = Vec::new();
        for (x, &a) in pairs.iter().enumerate() {
            for &b in &pairs[x + 1..] {
                if self.pairs_cross(a, b) {
                    out.push((block(a), block(b)));
                }
            }
        }
        out
    }

    pub fn caps_and_cups(&self) -> CapsAndCups {
        let mut caps = Vec::new();
        let mut cups = Vec::new();
        for (a, b) in self.pair_indices() {
            let (va, vb) = (self.vertex(a), self.vertex(b));
            if va.side != vb.side {
                continue;
            }
            let arc = Arc { left: va, right: vb };
            match va.side {
                Side::Top => cups.push(arc),
                Side::Bottom => caps.push(arc),
            }
        }
        CapsAndCups { caps, cups }
    }

    /// Reading-order key used for printing: tops by position, then bottoms.
    fn reading_key(v: Vertex) -> (Side, usize) {
        (v.side, v.pos)
    }
}

impl PartialOrd for GeneralizedDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneralizedDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.top, self.bottom, &self.partner).cmp(&(other.top, other.bottom, &other.partner))
    }
}

/// Enumerates `B[d]`, all `(2d-1)!!` perfect matchings, with the default limit.
pub fn enumerate_brauer(d: usize) -> Result<Vec<GeneralizedDiagram>> {
    enumerate_brauer_with_limit(d, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_brauer_with_limit(d: usize, limit: usize) -> Result<Vec<GeneralizedDiagram>> {
    if d > limit {
        return Err(Error::LimitExceeded { d, limit });
    }
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; 2 * d];
    fn rec(partner: &mut Vec<usize>, d: usize, out: &mut Vec<GeneralizedDiagram>) {
        let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(GeneralizedDiagram::from_partner(d, d, partner.clone()));
            return;
        };
        for other in first + 1..2 * d {
            if partner[other] != usize::MAX {
                continue;
            }
            partner[first] = other;
            partner[other] = first;
            rec(partner, d, out);
            partner[first] = usize::MAX;
            partner[other] = usize::MAX;
        }
    }
    rec(&mut partner, d, &mut out);
    Ok(out)
}

pub fn double_factorial_odd(d: usize) -> usize {
    (1..=d).map(|k| 2 * k - 1).product()
}

impl fmt::Display for GeneralizedDiagram {
    /// Blocks in reading order (top `1..`, then bottom `1*..`), e.g. `(1,2*)(2,1*)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut blocks: Vec<Vec<Vertex>> = Vec::new();
        for (i, &p) in self.partner.iter().enumerate() {
            if p == i {
                blocks.push(vec![self.vertex(i)]);
            } else if i < p {
                blocks.push(vec![self.vertex(i), self.vertex(p)]);
            }
        }
        blocks.sort_by_key(|b| Self::reading_key(b[0]));
        if blocks.is_empty() {
            return write!(f, "()");
        }
        for b in blocks {
            let text: Vec<String> = b.iter().map(ToString::to_string).collect();
            write!(f, "({})", text.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GeneralizedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_vertex(token: &str) -> Result<Vertex> {
    let token = token.trim();
    let (digits, side) = match token.strip_suffix('*') {
        Some(rest) => (rest.trim(), Side::Bottom),
        None => (token, Side::Top),
    };
    let pos: usize = digits.parse().map_err(|_| Error::Parse(format!("bad vertex {token:?}")))?;
    if pos == 0 {
        return Err(Error::Parse("vertex positions start at 1".into()));
    }
    Ok(Vertex { pos, side })
}

/// Parses block literals such as `(1,2*)(2,1*)` or `{(1,2),(3),(1*,2*)...}`.
/// Top and bottom counts are the largest positions that occur; `()` is the
/// empty diagram.
pub fn parse_blocks(text: &str) -> Result<(usize, usize, Vec<Block>)> {
    let mut blocks = Vec::new();
    let mut rest = text.trim();
    rest = rest.strip_prefix('{').unwrap_or(rest);
    rest = rest.strip_suffix('}').unwrap_or(rest);
    let mut chars = rest.char_indices().peekable();
    let (mut top, mut bottom) = (0, 0);
    while let Some((i, c)) = chars.next() {
        match c {
            ' ' | ',' | '\t' | '\n' => continue,
            '(' => {
                let close = rest[i..].find(')').ok_or_else(|| Error::Parse("unclosed block".into()))? + i;
                let inner = rest[i + 1..close].trim();
                if !inner.is_empty() {
                    let vs: Vec<Vertex> = inner.split(',').map(parse_vertex).collect::<Result<_>>()?;
                    for v in &vs {
                        match v.side {
                            Side::Top => top = top.max(v.pos),
                            Side::Bottom => bottom = bottom.max(v.pos),
                        }
                    }
                    blocks.push(match vs.as_slice() {
                        [a] => Block::Single(*a),
                        [a, b] => Block::Pair(*a, *b),
                        _ => return Err(Error::Parse(format!("block ({inner}) must have 1 or 2 vertices"))),
                    });
                }
                while chars.peek().is_some_and(|(j, _)| *j <= close) {
                    chars.next();
                }
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in diagram"))),
        }
    }
    Ok((top, bottom, blocks))
}

impl FromStr for GeneralizedDiagram {
    type Err = Error;

    /// Parses a square diagram literal; top and bottom counts must agree.
    fn from_str(s: &str) -> Result<Self> {
        let (top, bottom, blocks) = parse_blocks(s)?;
        if top != bottom {
            return Err(Error::Parse(format!("diagram has {top} top and {bottom} bottom vertices")));
        }
        Self::from_blocks(top, bottom, &blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(s: &str) -> GeneralizedDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn generators() {
        assert_eq!(GeneralizedDiagram::generator(2, GeneratorKind::S, 1).unwrap(), diag("(1,2*)(2,1*)"));
        assert_eq!(GeneralizedDiagram::generator(2, GeneratorKind::E, 1).unwrap(), diag("(1,2)(1*,2*)"));
        assert_eq!(GeneralizedDiagram::generator(3, GeneratorKind::Identity, 0).unwrap(), diag("(1,1*)(2,2*)(3,3*)"));
        assert!(GeneralizedDiagram::generator(3, GeneratorKind::E, 3).is_err());
        assert!(GeneralizedDiagram::generator(3, GeneratorKind::S, 0).is_err());
    }

    #[test]
    fn composition_examples() {
        let e = |d, i| GeneralizedDiagram::generator(d, GeneratorKind::E, i).unwrap();
        let s = |d, i| GeneralizedDiagram::generator(d, GeneratorKind::S, i).unwrap();

        let r = e(2, 1).compose(&e(2, 1)).unwrap();
        assert_eq!((r.diagram, r.loops), (e(2, 1), 1));

        let r = s(2, 1).compose(&s(2, 1)).unwrap();
        assert_eq!((r.diagram, r.loops), (GeneralizedDiagram::identity(2), 0));

        let e12 = e(3, 1).compose(&e(3, 2)).unwrap();
        assert_eq!(e12.diagram, diag("(1,2)(3,1*)(2*,3*)"));
        let r = e12.diagram.compose(&e(3, 1)).unwrap();
        assert_eq!((r.diagram, r.loops + e12.loops), (e(3, 1), 0));
    }

    #[test]
    fn middle_singletons_are_not_loops() {
        let cup_only: GeneralizedDiagram = diag("(1,2)(1*)(2*)");
        let cap_only: GeneralizedDiagram = diag("(1)(2)(1*,2*)");
        let r = cap_only.compose(&cup_only).unwrap();
        assert_eq!(r.loops, 1);
        assert_eq!(r.diagram, GeneralizedDiagram::empty(2, 2));

        let single = GeneralizedDiagram::empty(2, 2);
        let r = single.compose(&single).unwrap();
        assert_eq!(r.loops, 0);
        let r = cup_only.compose(&cap_only).unwrap();
        assert_eq!((r.diagram, r.loops), (diag("(1,2)(1*,2*)"), 0));
    }

    #[test]
    fn mismatched_composition_fails() {
        let a = GeneralizedDiagram::identity(2);
        let b = GeneralizedDiagram::identity(3);
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn subdiagram_counts() {
        let e = GeneralizedDiagram::generator(2, GeneratorKind::E, 1).unwrap();
        let subs = e.subdiagrams();
        assert_eq!(subs.len(), 4);
        assert!(subs.contains(&e));
        assert!(subs.contains(&GeneralizedDiagram::empty(2, 2)));
        assert!(subs.iter().all(|b| b.is_subdiagram_of(&e)));
        assert_eq!(GeneralizedDiagram::identity(1).subdiagrams().len(), 2);
        assert_eq!(GeneralizedDiagram::generator(2, GeneratorKind::S, 1).unwrap().subdiagrams().len(), 4);
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(GeneralizedDiagram::generator(2, GeneratorKind::S, 1).unwrap().crossings().len(), 1);
        assert_eq!(GeneralizedDiagram::generator(2, GeneratorKind::E, 1).unwrap().crossings().len(), 0);
        assert_eq!(diag("(1,3*)(2,1*)(3,2*)").crossings().len(), 2);
        // A strand leaving through a cup must cross it.
        assert_eq!(diag("(1,3)(2,1*)(2*,3*)").crossings().len(), 1);
    }

    #[test]
    fn caps_and_cups_examples() {
        let cc = GeneralizedDiagram::generator(2, GeneratorKind::E, 1).unwrap().caps_and_cups();
        assert_eq!(cc.caps, vec![Arc { left: Vertex::bottom(1), right: Vertex::bottom(2) }]);
        assert_eq!(cc.cups, vec![Arc { left: Vertex::top(1), right: Vertex::top(2) }]);
        let cc = GeneralizedDiagram::identity(3).caps_and_cups();
        assert!(cc.caps.is_empty() && cc.cups.is_empty());
        let cc = diag("(1,2)(3,3*)(1*,2*)").caps_and_cups();
        assert_eq!((cc.caps.len(), cc.cups.len()), (1, 1));
    }

    #[test]
    fn canonical_block_order() {
        let b = diag("(1,2*)(2,1*)");
        assert_eq!(
            b.blocks(),
            vec![Block::Pair(Vertex::bottom(1), Vertex::top(2)), Block::Pair(Vertex::bottom(2), Vertex::top(1)),]
        );
    }

    #[test]
    fn printing_and_parsing() {
        for text in ["(1,2*)(2,1*)", "(1,2)(3,1*)(2*,3*)", "(1)(2,2*)(1*)", "()"] {
            assert_eq!(diag(text).to_string(), text);
        }
        assert_eq!(diag("{(2,1*),(1,2*)}"), diag("(1,2*)(2,1*)"));
        assert!("(1,2)(1,1*)".parse::<GeneralizedDiagram>().is_err());
        assert!("(1,2*)".parse::<GeneralizedDiagram>().is_err());
        assert!("(1,2,3)(1*)(2*)(3*)".parse::<GeneralizedDiagram>().is_err());
    }

    #[test]
    fn enumeration_limit() {
        assert_eq!(enumerate_brauer(1).unwrap().len(), 1);
        assert_eq!(enumerate_brauer(2).unwrap().len(), 3);
        assert_eq!(enumerate_brauer(3).unwrap().len(), 15);
        assert_eq!(enumerate_brauer(7), Err(Error::LimitExceeded { d: 7, limit: 6 }));
        assert_eq!(double_factorial_odd(4), 105);
    }
}
