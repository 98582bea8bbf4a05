//! The hyperoctahedral category in its two equivalent presentations:
//! morphisms as C2-labelled ordered fiber partitions, and morphisms as pairs
//! (order-preserving map, signed permutation). Composition is implemented on
//! the fiber side and transported through the isomorphism between the two.
//!
//! The object [n] is {0..n}; n = -1 encodes the appended initial object.

use rand::seq::SliceRandom;
use rand::Rng;
use std::fmt;
use thiserror::Error;

pub const DEFAULT_ENUM_CAP: u64 = 20_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("fibers do not partition the source: {0}")]
    NotAPartition(String),
    #[error("rank out of range: {0}")]
    BadRank(i32),
    #[error("malformed morphism `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("hom-set of size {required} exceeds enumeration cap {cap}")]
    EnumerationCapExceeded { required: u128, cap: u64 },
}

/// A label in the two-element group: `Pos` is the identity, `Neg` the twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Pos,
    Neg,
}

impl Label {
    pub fn flip(self) -> Label {
        match self {
            Label::Pos => Label::Neg,
            Label::Neg => Label::Pos,
        }
    }
}

impl std::ops::Mul for Label {
    type Output = Label;

    fn mul(self, other: Label) -> Label {
        if self == other {
            Label::Pos
        } else {
            Label::Neg
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pos => write!(f, "+"),
            Label::Neg => write!(f, "-"),
        }
    }
}

/// A permutation of {0..size-1} in one-line notation: `0[i]` is the image
/// of i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(size: usize) -> Self {
        Perm((0..size).collect())
    }

    pub fn from_one_line(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Perm(images)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// self after other: (a.compose(b))(i) = a(b(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.size(), other.size(), "permutation size mismatch");
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// All permutations of the given size in lexicographic one-line order.
    pub fn enumerate(size: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(size);
        let mut used = vec![false; size];
        fn rec(size: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if current.len() == size {
                out.push(Perm(current.clone()));
                return;
            }
            for v in 0..size {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(size, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(size, &mut current, &mut used, &mut out);
        out
    }

    pub fn random<R: Rng>(rng: &mut R, size: usize) -> Perm {
        let mut v: Vec<usize> = (0..size).collect();
        v.shuffle(rng);
        Perm(v)
    }

    /// Swap of two points, identity elsewhere.
    pub fn transposition(size: usize, a: usize, b: usize) -> Perm {
        let mut v: Vec<usize> = (0..size).collect();
        v.swap(a, b);
        Perm(v)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// An element of the hyperoctahedral group on {0..size-1}: a sign for each
/// source index together with a permutation. The sign attached to index i
/// acts on the i-th input before the permutation places it, matching the
/// evaluation convention of the bar construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    pub signs: Vec<Label>,
    pub perm: Perm,
}

impl SignedPermutation {
    pub fn new(signs: Vec<Label>, perm: Perm) -> Self {
        assert_eq!(signs.len(), perm.size(), "sign vector length mismatch");
        SignedPermutation { signs, perm }
    }

    pub fn identity(size: usize) -> Self {
        SignedPermutation { signs: vec![Label::Pos; size], perm: Perm::identity(size) }
    }

    pub fn size(&self) -> usize {
        self.perm.size()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.signs.iter().all(|s| *s == Label::Pos)
    }

    /// Group product, first factor outermost: the result acts like `self`
    /// after `other`. Signs combine as z[other.perm(i)] * w[i].
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.size(), other.size(), "signed permutation size mismatch");
        let perm = self.perm.compose(&other.perm);
        let signs = (0..self.size())
            .map(|i| self.signs[other.perm.apply(i)] * other.signs[i])
            .collect();
        SignedPermutation { signs, perm }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let perm = self.perm.inverse();
        let signs = (0..self.size()).map(|i| self.signs[perm.apply(i)]).collect();
        SignedPermutation { signs, perm }
    }

    /// Faithful action on tuples of labelled values: the sign of index i is
    /// applied to the i-th entry, which then moves to position perm(i).
    pub fn act_on_tuple<T: Clone>(&self, tuple: &[(T, Label)]) -> Vec<(T, Label)> {
        assert_eq!(tuple.len(), self.size(), "tuple length mismatch");
        let mut out: Vec<Option<(T, Label)>> = vec![None; self.size()];
        for (i, (value, label)) in tuple.iter().enumerate() {
            let moved = match self.signs[i] {
                Label::Pos => (value.clone(), *label),
                Label::Neg => (value.clone(), label.flip()),
            };
            out[self.perm.apply(i)] = Some(moved);
        }
        out.into_iter().map(|x| x.unwrap()).collect()
    }

    /// All group elements, permutation outer / sign word inner, both in
    /// lexicographic order.
    pub fn enumerate(size: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::new();
        for perm in Perm::enumerate(size) {
            for bits in 0..(1u64 << size) {
                let signs = (0..size)
                    .map(|i| if bits >> (size - 1 - i) & 1 == 0 { Label::Pos } else { Label::Neg })
                    .collect();
                out.push(SignedPermutation { signs, perm: perm.clone() });
            }
        }
        out
    }

    pub fn random<R: Rng>(rng: &mut R, size: usize) -> SignedPermutation {
        let perm = Perm::random(rng, size);
        let signs = (0..size).map(|_| if rng.gen::<bool>() { Label::Pos } else { Label::Neg }).collect();
        SignedPermutation { signs, perm }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: Vec<String> = self.signs.iter().map(|s| s.to_string()).collect();
        write!(f, "({}; {})", signs.join(""), self.perm)
    }
}

/// Reverse an ordered labelled list and flip every label.
pub fn twist(list: &[(usize, Label)]) -> Vec<(usize, Label)> {
    list.iter().rev().map(|(i, l)| (*i, l.flip())).collect()
}

/// A morphism [n] -> [m] presented by its fibers: an ordered, labelled
/// partition of {0..n} into m+1 blocks, the block over each target element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledFiberMap {
    source_rank: i32,
    target_rank: i32,
    fibers: Vec<Vec<(usize, Label)>>,
}

impl LabelledFiberMap {
    pub fn new(
        source_rank: i32,
        target_rank: i32,
        fibers: Vec<Vec<(usize, Label)>>,
    ) -> Result<Self, CategoryError> {
        if source_rank < -1 {
            return Err(CategoryError::BadRank(source_rank));
        }
        if target_rank < -1 {
            return Err(CategoryError::BadRank(target_rank));
        }
        if fibers.len() != (target_rank + 1) as usize {
            return Err(CategoryError::NotAPartition(format!(
                "expected {} fibers, found {}",
                target_rank + 1,
                fibers.len()
            )));
        }
        let n = (source_rank + 1) as usize;
        let mut seen = vec![false; n];
        let mut count = 0usize;
        for fiber in &fibers {
            for (i, _) in fiber {
                if *i >= n || seen[*i] {
                    return Err(CategoryError::NotAPartition(format!(
                        "element {i} repeated or out of range"
                    )));
                }
                seen[*i] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(CategoryError::NotAPartition(format!(
                "{count} elements placed, source has {n}"
            )));
        }
        Ok(LabelledFiberMap { source_rank, target_rank, fibers })
    }

    pub fn source_rank(&self) -> i32 {
        self.source_rank
    }

    pub fn target_rank(&self) -> i32 {
        self.target_rank
    }

    pub fn fibers(&self) -> &[Vec<(usize, Label)>] {
        &self.fibers
    }

    pub fn fiber(&self, j: usize) -> &[(usize, Label)] {
        &self.fibers[j]
    }

    pub fn identity(n: i32) -> Self {
        assert!(n >= -1);
        let fibers = (0..=n).map(|j| vec![(j as usize, Label::Pos)]).collect();
        LabelledFiberMap { source_rank: n, target_rank: n, fibers }
    }

    /// The unique morphism from the initial object [-1] to [m].
    pub fn initial_to(m: i32) -> Self {
        assert!(m >= -1);
        LabelledFiberMap {
            source_rank: -1,
            target_rank: m,
            fibers: vec![Vec::new(); (m + 1) as usize],
        }
    }

    /// The order-preserving fold [n] -> [0]: the fiber over 0 is
    /// 0 < 1 < ... < n with all labels positive. Multiplies all inputs in
    /// their given order under the bar construction.
    pub fn ordered_fold(n: i32) -> Self {
        assert!(n >= -1);
        let fiber = (0..=n).map(|i| (i as usize, Label::Pos)).collect();
        LabelledFiberMap { source_rank: n, target_rank: 0, fibers: vec![fiber] }
    }

    /// The twisted fold [2] -> [0] with fiber 2 < 1(-) < 0: under the bar
    /// construction it sends a0 (x) a1 (x) a2 to a2 * conj(a1) * a0.
    pub fn twisted_fold() -> Self {
        let fiber = vec![(2, Label::Pos), (1, Label::Neg), (0, Label::Pos)];
        LabelledFiberMap { source_rank: 2, target_rank: 0, fibers: vec![fiber] }
    }

    pub fn is_identity(&self) -> bool {
        self.source_rank == self.target_rank && *self == Self::identity(self.source_rank)
    }

    /// Composition g after f. The fiber of the composite over k lists, in
    /// the order of g's fiber over k, the fiber of f over each j — as-is for
    /// a positive label on j, twisted for a negative one.
    pub fn compose(g: &LabelledFiberMap, f: &LabelledFiberMap) -> LabelledFiberMap {
        assert_eq!(
            f.target_rank, g.source_rank,
            "composition rank mismatch: {} vs {}",
            f.target_rank, g.source_rank
        );
        let fibers = g
            .fibers
            .iter()
            .map(|gf| {
                let mut out = Vec::new();
                for (j, label) in gf {
                    match label {
                        Label::Pos => out.extend_from_slice(&f.fibers[*j]),
                        Label::Neg => out.extend(twist(&f.fibers[*j])),
                    }
                }
                out
            })
            .collect();
        LabelledFiberMap { source_rank: f.source_rank, target_rank: g.target_rank, fibers }
    }

    /// Decompose into (order-preserving map, signed permutation).
    pub fn to_delta_h(&self) -> DeltaHMorphism {
        let n = (self.source_rank + 1) as usize;
        let mut perm = vec![0usize; n];
        let mut signs = vec![Label::Pos; n];
        let mut phi = Vec::with_capacity(n);
        let mut pos = 0usize;
        for (j, fiber) in self.fibers.iter().enumerate() {
            for (elem, label) in fiber {
                perm[*elem] = pos;
                signs[*elem] = *label;
                phi.push(j);
                pos += 1;
            }
        }
        DeltaHMorphism {
            source_rank: self.source_rank,
            target_rank: self.target_rank,
            phi,
            g: SignedPermutation::new(signs, Perm(perm)),
        }
    }

    /// Right action of the hyperoctahedral group on a hom-set: precompose
    /// with the automorphism, i.e. (phi, g) * h = (phi, g h).
    pub fn right_action(&self, h: &SignedPermutation) -> LabelledFiberMap {
        let dh = self.to_delta_h();
        assert_eq!(dh.g.size(), h.size(), "action size mismatch");
        DeltaHMorphism {
            source_rank: dh.source_rank,
            target_rank: dh.target_rank,
            phi: dh.phi,
            g: dh.g.compose(h),
        }
        .to_fiber_map()
    }

    /// The automorphism of [n] given by a group element, as a fiber map.
    pub fn from_automorphism(h: &SignedPermutation) -> LabelledFiberMap {
        let n = h.size() as i32 - 1;
        DeltaHMorphism {
            source_rank: n,
            target_rank: n,
            phi: (0..h.size()).collect(),
            g: h.clone(),
        }
        .to_fiber_map()
    }

    pub fn random<R: Rng>(rng: &mut R, n: i32, m: i32) -> LabelledFiberMap {
        assert!(n >= -1 && m >= -1);
        if n == -1 {
            return Self::initial_to(m);
        }
        assert!(m >= 0, "no morphism from [n>=0] to [-1]");
        let len = (n + 1) as usize;
        let mut phi: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=(m as usize))).collect();
        phi.sort_unstable();
        let g = SignedPermutation::random(rng, len);
        DeltaHMorphism { source_rank: n, target_rank: m, phi, g }.to_fiber_map()
    }

    /// Grammar: `HOM n m : f0 | f1 | ... | fm`, each fiber a space-separated
    /// list of `<index>^<+|->` in fiber order.
    pub fn parse(input: &str) -> Result<Self, CategoryError> {
        let err = |reason: &str| CategoryError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (head, body) = input.split_once(':').ok_or_else(|| err("missing `:`"))?;
        let head: Vec<&str> = head.split_whitespace().collect();
        let [kw, n, m] = head[..] else {
            return Err(err("header must be `HOM n m`"));
        };
        if kw != "HOM" {
            return Err(err("header must start with HOM"));
        }
        let n: i32 = n.parse().map_err(|_| err("bad source rank"))?;
        let m: i32 = m.parse().map_err(|_| err("bad target rank"))?;
        let mut fibers = Vec::new();
        if m >= 0 {
            for part in body.split('|') {
                let mut fiber = Vec::new();
                for token in part.split_whitespace() {
                    let (idx, lab) = token
                        .split_once('^')
                        .ok_or_else(|| err("element token must be `<index>^<+|->`"))?;
                    let idx: usize = idx.parse().map_err(|_| err("bad element index"))?;
                    let lab = match lab {
                        "+" => Label::Pos,
                        "-" => Label::Neg,
                        _ => return Err(err("label must be + or -")),
                    };
                    fiber.push((idx, lab));
                }
                fibers.push(fiber);
            }
        } else if !body.trim().is_empty() {
            return Err(err("target [-1] admits no fibers"));
        }
        LabelledFiberMap::new(n, m, fibers)
    }
}

impl fmt::Display for LabelledFiberMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HOM {} {} :", self.source_rank, self.target_rank)?;
        let parts: Vec<String> = self
            .fibers
            .iter()
            .map(|fiber| {
                fiber
                    .iter()
                    .map(|(i, l)| format!("{i}^{l}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        if !parts.is_empty() {
            write!(f, " {}", parts.join(" | "))?;
        }
        Ok(())
    }
}

/// The unique-decomposition form of a morphism: an order-preserving map on
/// underlying sets together with a signed permutation of the source.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaHMorphism {
    pub source_rank: i32,
    pub target_rank: i32,
    /// Nondecreasing images of 0..=n; empty when the source is [-1].
    pub phi: Vec<usize>,
    pub g: SignedPermutation,
}

impl DeltaHMorphism {
    pub fn new(source_rank: i32, target_rank: i32, phi: Vec<usize>, g: SignedPermutation) -> Self {
        assert_eq!(phi.len(), (source_rank + 1) as usize);
        assert_eq!(g.size(), phi.len());
        assert!(phi.windows(2).all(|w| w[0] <= w[1]), "phi must be nondecreasing");
        assert!(phi.iter().all(|&j| (j as i32) <= target_rank), "phi image out of range");
        DeltaHMorphism { source_rank, target_rank, phi, g }
    }

    pub fn identity(n: i32) -> Self {
        let len = (n + 1) as usize;
        DeltaHMorphism {
            source_rank: n,
            target_rank: n,
            phi: (0..len).collect(),
            g: SignedPermutation::identity(len),
        }
    }

    /// Inverse of [`LabelledFiberMap::to_delta_h`]: the fiber over j lists
    /// the preimages of phi's block over j, pulled back through the
    /// permutation, carrying the source-indexed signs.
    pub fn to_fiber_map(&self) -> LabelledFiberMap {
        let inv = self.g.perm.inverse();
        let mut fibers: Vec<Vec<(usize, Label)>> = vec![Vec::new(); (self.target_rank + 1) as usize];
        for (pos, j) in self.phi.iter().enumerate() {
            let elem = inv.apply(pos);
            fibers[*j].push((elem, self.g.signs[elem]));
        }
        LabelledFiberMap {
            source_rank: self.source_rank,
            target_rank: self.target_rank,
            fibers,
        }
    }

    /// Composition, transported through the fiber presentation.
    pub fn compose(outer: &DeltaHMorphism, inner: &DeltaHMorphism) -> DeltaHMorphism {
        LabelledFiberMap::compose(&outer.to_fiber_map(), &inner.to_fiber_map()).to_delta_h()
    }
}

impl fmt::Display for DeltaHMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let phi: Vec<String> = self.phi.iter().map(|v| v.to_string()).collect();
        write!(f, "(phi [{}]; g {})", phi.join(" "), self.g)
    }
}

/// Number of morphisms [n] -> [m], None when it overflows u128.
pub fn hom_count(n: i32, m: i32) -> Option<u128> {
    assert!(n >= -1 && m >= -1);
    if n == -1 {
        return Some(1);
    }
    if m == -1 {
        return Some(0);
    }
    let (n, m) = (n as u128, m as u128);
    let binom = binomial(n + m + 1, n + 1)?;
    let mut result = binom;
    result = result.checked_mul(1u128.checked_shl((n + 1) as u32)?)?;
    for k in 1..=(n + 1) {
        result = result.checked_mul(k)?;
    }
    Some(result)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

fn nondecreasing_maps(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(len: usize, max: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in start..=max {
            current.push(v);
            rec(len, max, v, current, out);
            current.pop();
        }
    }
    rec(len, max, 0, &mut current, &mut out);
    out
}

/// Exhaustive, duplicate-free enumeration of Hom([n],[m]) in the order
/// (order-preserving map, permutation, sign word), each lexicographic.
pub fn enumerate_hom(n: i32, m: i32, cap: u64) -> Result<Vec<LabelledFiberMap>, CategoryError> {
    let required = hom_count(n, m).unwrap_or(u128::MAX);
    if required > cap as u128 {
        return Err(CategoryError::EnumerationCapExceeded { required, cap });
    }
    if n == -1 {
        return Ok(vec![LabelledFiberMap::initial_to(m)]);
    }
    if m == -1 {
        return Ok(Vec::new());
    }
    let len = (n + 1) as usize;
    let mut out = Vec::with_capacity(required as usize);
    for phi in nondecreasing_maps(len, m as usize) {
        for perm in Perm::enumerate(len) {
            for bits in 0..(1u64 << len) {
                let signs: Vec<Label> = (0..len)
                    .map(|i| if bits >> (len - 1 - i) & 1 == 0 { Label::Pos } else { Label::Neg })
                    .collect();
                let dh = DeltaHMorphism {
                    source_rank: n,
                    target_rank: m,
                    phi: phi.clone(),
                    g: SignedPermutation::new(signs, perm.clone()),
                };
                out.push(dh.to_fiber_map());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn fm(s: &str) -> LabelledFiberMap {
        LabelledFiberMap::parse(s).unwrap()
    }

    #[test]
    fn signed_perm_identity_and_square() {
        let id = SignedPermutation::identity(2);
        assert_eq!(id.compose(&id), id);
        let t0 = SignedPermutation::new(vec![Label::Neg, Label::Pos], Perm::identity(2));
        assert_eq!(t0.compose(&t0), id);
    }

    #[test]
    fn signed_perm_composition_matches_tuple_action() {
        // oracle: the faithful action on labelled tuples
        let tuple: Vec<(usize, Label)> = vec![(10, Label::Pos), (11, Label::Pos), (12, Label::Neg)];
        for a in SignedPermutation::enumerate(3) {
            for b in SignedPermutation::enumerate(3) {
                let ab = a.compose(&b);
                assert_eq!(ab.act_on_tuple(&tuple), a.act_on_tuple(&b.act_on_tuple(&tuple)));
            }
        }
    }

    #[test]
    fn signed_perm_spec_product() {
        // ((1,t); (0 1)) * ((t,1); id), pinned by the tuple-action oracle
        let a = SignedPermutation::new(vec![Label::Pos, Label::Neg], Perm::transposition(2, 0, 1));
        let b = SignedPermutation::new(vec![Label::Neg, Label::Pos], Perm::identity(2));
        let ab = a.compose(&b);
        let tuple: Vec<(usize, Label)> = vec![(0, Label::Pos), (1, Label::Pos)];
        assert_eq!(ab.act_on_tuple(&tuple), a.act_on_tuple(&b.act_on_tuple(&tuple)));
        assert_eq!(ab.perm, Perm::transposition(2, 0, 1));
        assert_eq!(ab.signs, vec![Label::Neg, Label::Neg]);
    }

    #[test]
    fn signed_perm_inverse() {
        for g in SignedPermutation::enumerate(3) {
            assert!(g.compose(&g.inverse()).is_identity());
            assert!(g.inverse().compose(&g).is_identity());
        }
    }

    #[test]
    fn hyperoctahedral_group_orders() {
        for n in 0..=3i32 {
            let size = (n + 1) as usize;
            let all = SignedPermutation::enumerate(size);
            let expected = (1usize << size) * (1..=size).product::<usize>();
            assert_eq!(all.len(), expected);
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), expected);
        }
    }

    #[test]
    fn twist_examples() {
        assert_eq!(twist(&[]), Vec::<(usize, Label)>::new());
        assert_eq!(twist(&[(0, Label::Pos)]), vec![(0, Label::Neg)]);
        // 2 < 1(-) < 0 twists to 0(-) < 1 < 2(-)
        let nu = vec![(2, Label::Pos), (1, Label::Neg), (0, Label::Pos)];
        assert_eq!(
            twist(&nu),
            vec![(0, Label::Neg), (1, Label::Pos), (2, Label::Neg)]
        );
        assert_eq!(twist(&twist(&nu)), nu);
    }

    #[test]
    fn compose_with_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let f = LabelledFiberMap::random(&mut rng, 2, 3);
            assert_eq!(LabelledFiberMap::compose(&LabelledFiberMap::identity(3), &f), f);
            assert_eq!(LabelledFiberMap::compose(&f, &LabelledFiberMap::identity(2)), f);
        }
    }

    #[test]
    fn compose_fold_with_double_twist() {
        // w: [1] -> [1] with fibers {1^-} and {0^-}; fold after w reverses
        // and twists both inputs
        let w = fm("HOM 1 1 : 1^- | 0^-");
        let fold = LabelledFiberMap::ordered_fold(1);
        let composite = LabelledFiberMap::compose(&fold, &w);
        assert_eq!(composite, fm("HOM 1 0 : 1^- 0^-"));
    }

    #[test]
    fn twisted_fold_after_identity_partition() {
        let g = fm("HOM 2 2 : 0^+ | 1^+ | 2^+");
        let nu = LabelledFiberMap::twisted_fold();
        assert_eq!(LabelledFiberMap::compose(&nu, &g), nu);
    }

    #[test]
    fn composition_associative_small_ranks() {
        // exhaustive over all composable triples with every rank <= 1
        let ranks = [-1i32, 0, 1];
        for &a in &ranks {
            for &b in &ranks {
                for &c in &ranks {
                    for &d in &ranks {
                        let fs = enumerate_hom(a, b, DEFAULT_ENUM_CAP).unwrap();
                        let gs = enumerate_hom(b, c, DEFAULT_ENUM_CAP).unwrap();
                        let hs = enumerate_hom(c, d, DEFAULT_ENUM_CAP).unwrap();
                        for f in &fs {
                            for g in &gs {
                                for h in &hs {
                                    let left = LabelledFiberMap::compose(
                                        h,
                                        &LabelledFiberMap::compose(g, f),
                                    );
                                    let right = LabelledFiberMap::compose(
                                        &LabelledFiberMap::compose(h, g),
                                        f,
                                    );
                                    assert_eq!(left, right);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composition_associative_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = rng.gen_range(-1..=3);
            let b = rng.gen_range(0..=3);
            let c = rng.gen_range(0..=3);
            let d = rng.gen_range(0..=3);
            let f = LabelledFiberMap::random(&mut rng, a, b);
            let g = LabelledFiberMap::random(&mut rng, b, c);
            let h = LabelledFiberMap::random(&mut rng, c, d);
            assert_eq!(
                LabelledFiberMap::compose(&h, &LabelledFiberMap::compose(&g, &f)),
                LabelledFiberMap::compose(&LabelledFiberMap::compose(&h, &g), &f)
            );
        }
    }

    #[test]
    fn fold_decomposes_as_identity_pair() {
        for n in 0..=3 {
            let dh = LabelledFiberMap::ordered_fold(n).to_delta_h();
            assert!(dh.g.is_identity());
            assert!(dh.phi.iter().all(|&j| j == 0));
        }
    }

    #[test]
    fn twisted_fold_decomposition() {
        // the twisted fold decomposes as (fold, (+,-,+; 0<->2))
        let dh = LabelledFiberMap::twisted_fold().to_delta_h();
        assert!(dh.phi.iter().all(|&j| j == 0));
        assert_eq!(dh.g.signs, vec![Label::Pos, Label::Neg, Label::Pos]);
        assert_eq!(dh.g.perm, Perm::transposition(3, 0, 2));
    }

    #[test]
    fn identity_decomposition() {
        let dh = LabelledFiberMap::identity(2).to_delta_h();
        assert_eq!(dh, DeltaHMorphism::identity(2));
    }

    #[test]
    fn decomposition_round_trip() {
        for n in -1..=2 {
            for m in -1..=2 {
                for f in enumerate_hom(n, m, DEFAULT_ENUM_CAP).unwrap() {
                    assert_eq!(f.to_delta_h().to_fiber_map(), f);
                }
            }
        }
    }

    #[test]
    fn decomposition_functorial_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let a = rng.gen_range(-1..=3);
            let b = rng.gen_range(0..=3);
            let c = rng.gen_range(0..=3);
            let f = LabelledFiberMap::random(&mut rng, a, b);
            let g = LabelledFiberMap::random(&mut rng, b, c);
            let composed = LabelledFiberMap::compose(&g, &f).to_delta_h();
            let transported = DeltaHMorphism::compose(&g.to_delta_h(), &f.to_delta_h());
            assert_eq!(composed, transported);
        }
    }

    #[test]
    fn automorphism_group_transport() {
        // composing automorphisms as fiber maps agrees with the group law
        for a in SignedPermutation::enumerate(3) {
            for b in SignedPermutation::enumerate(3) {
                let fiber = LabelledFiberMap::compose(
                    &LabelledFiberMap::from_automorphism(&a),
                    &LabelledFiberMap::from_automorphism(&b),
                );
                assert_eq!(fiber.to_delta_h().g, a.compose(&b));
            }
        }
    }

    #[test]
    fn hom_counts_match_formula() {
        for n in -1..=2i32 {
            for m in -1..=2i32 {
                let count = enumerate_hom(n, m, DEFAULT_ENUM_CAP).unwrap().len() as u128;
                assert_eq!(Some(count), hom_count(n, m), "n={n} m={m}");
                let distinct: HashSet<_> =
                    enumerate_hom(n, m, DEFAULT_ENUM_CAP).unwrap().into_iter().collect();
                assert_eq!(distinct.len() as u128, count);
            }
        }
        assert_eq!(hom_count(0, 0), Some(2));
        assert_eq!(hom_count(1, 0), Some(8));
        assert_eq!(hom_count(2, 0), Some(48));
        assert_eq!(hom_count(3, 0), Some(384));
        assert_eq!(hom_count(2, 2), Some(480));
        assert_eq!(hom_count(3, 2), Some(5760));
    }

    #[test]
    fn hom_zero_zero_listing() {
        let hom = enumerate_hom(0, 0, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(hom, vec![fm("HOM 0 0 : 0^+"), fm("HOM 0 0 : 0^-")]);
    }

    #[test]
    fn initial_object_unique_morphism() {
        for m in -1..=4 {
            assert_eq!(enumerate_hom(-1, m, DEFAULT_ENUM_CAP).unwrap().len(), 1);
        }
    }

    #[test]
    fn enumeration_cap_guard() {
        let err = enumerate_hom(3, 2, 100).unwrap_err();
        assert_eq!(
            err,
            CategoryError::EnumerationCapExceeded { required: 5760, cap: 100 }
        );
    }

    #[test]
    fn right_action_is_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let n = rng.gen_range(0..=3);
            let m = rng.gen_range(0..=3);
            let f = LabelledFiberMap::random(&mut rng, n, m);
            let size = (n + 1) as usize;
            let h1 = SignedPermutation::random(&mut rng, size);
            let h2 = SignedPermutation::random(&mut rng, size);
            assert_eq!(f.right_action(&SignedPermutation::identity(size)), f);
            assert_eq!(
                f.right_action(&h1).right_action(&h2),
                f.right_action(&h1.compose(&h2))
            );
            // the action is plain precomposition in the category
            assert_eq!(
                f.right_action(&h1),
                LabelledFiberMap::compose(&f, &LabelledFiberMap::from_automorphism(&h1))
            );
        }
    }

    #[test]
    fn right_action_produces_twisted_fold() {
        let h = SignedPermutation::new(
            vec![Label::Pos, Label::Neg, Label::Pos],
            Perm::transposition(3, 0, 2),
        );
        assert_eq!(
            LabelledFiberMap::ordered_fold(2).right_action(&h),
            LabelledFiberMap::twisted_fold()
        );
    }

    #[test]
    fn grammar_round_trip() {
        for n in -1..=2 {
            for m in -1..=2 {
                for f in enumerate_hom(n, m, DEFAULT_ENUM_CAP).unwrap() {
                    assert_eq!(LabelledFiberMap::parse(&f.to_string()).unwrap(), f);
                }
            }
        }
        let nu = LabelledFiberMap::twisted_fold();
        assert_eq!(nu.to_string(), "HOM 2 0 : 2^+ 1^- 0^+");
    }

    #[test]
    fn grammar_rejects_bad_input() {
        assert!(LabelledFiberMap::parse("HOM 1 0 : 0^+").is_err());
        assert!(LabelledFiberMap::parse("HOM 1 0 : 0^+ 0^-").is_err());
        assert!(LabelledFiberMap::parse("HOM 0 0 : 0^x").is_err());
        assert!(LabelledFiberMap::parse("nonsense").is_err());
    }
}
