//! Basic sequences `(1, A1, ..., An)` and their supplements.
//!
//! A basic sequence is the left edge of a caterpillar-shaped dual tree; the
//! right edge of the same tree reads off the supplement, and the two
//! together are a quiddity sequence.

use std::fmt;

use crate::error::{Error, Result};
use crate::eta::{format_sequence, is_eta, EtaSeq};
use crate::polygon::{enumerate_triangulations, DualNode, DualTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanSide {
    Left,
    Right,
}

/// `(A, 1, 2, ..., 2, 1)` with `A - 1` twos, or its right-handed mirror
/// `(1, 2, ..., 2, 1, A)`.
pub fn fan(a: u64, side: FanSide) -> Result<EtaSeq> {
    if a == 0 {
        return Err(Error::NonPositiveEntry { position: 0, value: 0 });
    }
    let twos = std::iter::repeat_n(2, a as usize - 1);
    let v: Vec<u64> = match side {
        FanSide::Left => std::iter::once(a)
            .chain(std::iter::once(1))
            .chain(twos)
            .chain(std::iter::once(1))
            .collect(),
        FanSide::Right => std::iter::once(1)
            .chain(twos)
            .chain([1, a])
            .collect(),
    };
    Ok(EtaSeq::trusted(v))
}

/// `(1, A1, ..., An)` with `n >= 1` and every `Ai >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicSeq(Vec<u64>);

impl BasicSeq {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.len() < 2 || entries[0] != 1 || entries[1..].iter().any(|&a| a < 2) {
            return Err(Error::NotBasic(entries));
        }
        Ok(BasicSeq(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// `A1, ..., An`.
    pub fn tail(&self) -> &[u64] {
        &self.0[1..]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_super_basic(&self) -> bool {
        let t = self.tail();
        t.len() > 1 && t[0] > 2 && t[t.len() - 1] > 2
    }
}

impl fmt::Display for BasicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sequence(&self.0))
    }
}

/// A basic sequence with `n > 1`, `A1 > 2` and `An > 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperBasicSeq(BasicSeq);

impl SuperBasicSeq {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        let b = BasicSeq::new(entries.clone()).map_err(|_| Error::NotSuperBasic(entries.clone()))?;
        if !b.is_super_basic() {
            return Err(Error::NotSuperBasic(entries));
        }
        Ok(SuperBasicSeq(b))
    }

    pub fn basic(&self) -> &BasicSeq {
        &self.0
    }

    pub fn entries(&self) -> &[u64] {
        self.0.entries()
    }
}

/// The caterpillar whose left edge reads `a`: a spine of internal nodes
/// `P1, ..., Pt`, where `P_i` hangs its leaf on the left exactly when `i` is
/// one of the partial sums `1, 1 + (A1 - 1), ...`.
fn caterpillar(a: &BasicSeq) -> DualNode {
    let mut marks = Vec::with_capacity(a.len());
    let mut p = 1u64;
    marks.push(p);
    for &x in a.tail() {
        p += x - 1;
        marks.push(p);
    }
    let t = p;
    let mut node = DualNode::node(DualNode::Leaf, DualNode::Leaf);
    let mut mark = marks.iter().rev().skip(1).peekable();
    for i in (1..t).rev() {
        while mark.peek().is_some_and(|&&m| m > i) {
            mark.next();
        }
        node = if mark.peek() == Some(&&i) {
            DualNode::node(DualNode::Leaf, node)
        } else {
            DualNode::node(node, DualNode::Leaf)
        };
    }
    node
}

/// The basic sequence `ā` with `a ∥ ā` a quiddity sequence, read from the
/// right edge of the caterpillar dual tree.
pub fn supplement(a: &BasicSeq) -> BasicSeq {
    let tree = DualTree::new(caterpillar(a), 0).expect("caterpillar has a triangle");
    let all = tree.readout();
    debug_assert_eq!(&all[..a.len()], a.entries());
    BasicSeq(all[a.len()..].to_vec())
}

/// The same supplement from the run decomposition
/// `(1, 2^x0, A1, 2^x1, ..., Ak, 2^xk)` with every `Al >= 3`.
///
/// Reading the runs backwards, an interior run of `x` twos becomes `x + 3`,
/// a nonempty boundary run becomes `x + 2`, and each `Al` becomes `Al - 3`
/// twos, plus one more for every boundary run it touches that is empty.
pub fn supplement_by_runs(a: &BasicSeq) -> BasicSeq {
    let mut runs = vec![0u64];
    let mut big = Vec::new();
    for &x in a.tail() {
        if x == 2 {
            *runs.last_mut().expect("nonempty") += 1;
        } else {
            big.push(x);
            runs.push(0);
        }
    }
    let k = big.len();
    if k == 0 {
        return BasicSeq(vec![1, runs[0] + 1]);
    }
    let mut out = vec![1];
    for l in (0..=k).rev() {
        let x = runs[l];
        let boundary = l == 0 || l == k;
        if !(boundary && x == 0) {
            out.push(x + if boundary { 2 } else { 3 });
        }
        if l > 0 {
            let al = big[l - 1];
            let touches = usize::from(l == k && runs[k] == 0) + usize::from(l == 1 && runs[0] == 0);
            let twos = al - 3 + touches as u64;
            out.extend(std::iter::repeat_n(2, twos as usize));
        }
    }
    BasicSeq(out)
}

/// `(1, A1, ..., An - 1)`.
fn hat_right(a: &[u64]) -> BasicSeq {
    let mut v = a.to_vec();
    *v.last_mut().expect("nonempty") -= 1;
    BasicSeq(v)
}

/// `(1, B1 - 1, ..., Bm)`.
fn hat_left(b: &[u64]) -> BasicSeq {
    let mut v = b.to_vec();
    v[1] -= 1;
    BasicSeq(v)
}

/// Joins two super-basic sequences into `(1, A1, ..., An - 1, B1 - 1, ..., Bm)`.
pub fn merge(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut v = hat_right(a).0;
    v.extend_from_slice(&hat_left(b).0[1..]);
    v
}

/// Supplement of `merge(a, b)` spliced from the supplements of the two
/// halves: `(1, Y1, ..., Y_{q-1}, Yq + X1 - 1, X2, ..., Xp)` where
/// `(1, X..)` supplements `(1, A1, ..., An - 1)` and `(1, Y..)` supplements
/// `(1, B1 - 1, ..., Bm)`.
pub fn splice(a: &[u64], b: &[u64]) -> Vec<u64> {
    let xi = supplement(&hat_right(a)).0;
    let eta = supplement(&hat_left(b)).0;
    let mut z = eta;
    *z.last_mut().expect("nonempty") += xi[1] - 1;
    z.extend_from_slice(&xi[2..]);
    z
}

/// Completes `α1 ∥ ... ∥ αs` to a quiddity sequence by appending one
/// basic sequence. Folds [`splice`] from the left.
pub fn extend_superbasic(seqs: &[SuperBasicSeq]) -> Result<EtaSeq> {
    let (first, rest) = seqs
        .split_first()
        .ok_or_else(|| Error::InvalidInput("at least one sequence is required".into()))?;
    let mut gamma = first.entries().to_vec();
    let mut zeta = supplement(first.basic()).0;
    for b in rest {
        zeta = splice(&gamma, b.entries());
        gamma = merge(&gamma, b.entries());
    }
    let mut out: Vec<u64> = seqs.iter().flat_map(|s| s.entries().iter().copied()).collect();
    out.extend(zeta);
    EtaSeq::new(out)
}

/// Why a block cannot sit inside any quiddity sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    NonPositive { position: usize },
    /// `2, 1, 2` at `position`. Clipping that 1 leaves two adjacent 1s,
    /// which only `(1, 1, 1)` has, so the only host is `(2, 1, 2, 1)`.
    TwoOneTwo { position: usize },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::NonPositive { position } => {
                write!(f, "entry at position {position} is not positive")
            }
            Obstruction::TwoOneTwo { position } => {
                write!(f, "2,1,2 at position {position} forces the square 2,1,2,1")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// A quiddity sequence starting with the block.
    Witness(EtaSeq),
    Obstructed(Obstruction),
    /// No host of length at most `bound` and no known obstruction.
    Unknown { bound: usize },
}

impl Embedding {
    pub fn decided(&self) -> Option<bool> {
        match self {
            Embedding::Witness(_) => Some(true),
            Embedding::Obstructed(_) => Some(false),
            Embedding::Unknown { .. } => None,
        }
    }
}

fn is_window_of(s: &[u64], host: &[u64]) -> Option<usize> {
    let n = host.len();
    if s.len() > n {
        return None;
    }
    (0..n).find(|&r| s.iter().enumerate().all(|(x, &v)| host[(r + x) % n] == v))
}

/// Splits at every 1; `Some` when each piece is super-basic.
fn superbasic_blocks(s: &[u64]) -> Option<Vec<SuperBasicSeq>> {
    if s.first() != Some(&1) {
        return None;
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for x in 1..=s.len() {
        if x == s.len() || s[x] == 1 {
            blocks.push(SuperBasicSeq::new(s[start..x].to_vec()).ok()?);
            start = x;
        }
    }
    Some(blocks)
}

/// Whether `s` occurs as a contiguous block of some quiddity sequence.
///
/// Constructive cases come first (single entries, basic and chained
/// super-basic blocks), then the `2, 1, 2` obstruction, then every quiddity
/// sequence of length up to `bound`.
pub fn is_embeddable(s: &[u64], bound: usize) -> Embedding {
    if let Some(position) = s.iter().position(|&c| c == 0) {
        return Embedding::Obstructed(Obstruction::NonPositive { position });
    }
    match s {
        [] => return Embedding::Witness(EtaSeq::base()),
        [a] => return Embedding::Witness(fan(*a, FanSide::Left).expect("positive")),
        _ => {}
    }
    if s.len() >= 3 && is_eta(s).unwrap_or(false) {
        return Embedding::Witness(EtaSeq::trusted(s.to_vec()));
    }
    if let Ok(b) = BasicSeq::new(s.to_vec()) {
        let mut v = s.to_vec();
        v.extend(supplement(&b).0);
        return Embedding::Witness(EtaSeq::trusted(v));
    }
    if let Some(blocks) = superbasic_blocks(s) {
        if let Ok(q) = extend_superbasic(&blocks) {
            return Embedding::Witness(q);
        }
    }
    let square = [2, 1, 2, 1];
    if let Some(r) = is_window_of(s, &square) {
        return Embedding::Witness(EtaSeq::trusted(crate::eta::rotated(&square, r as isize)));
    }
    if let Some(position) = s.windows(3).position(|w| w == [2, 1, 2]) {
        return Embedding::Obstructed(Obstruction::TwoOneTwo { position });
    }
    for n in s.len().max(3)..=bound {
        let Ok(all) = enumerate_triangulations(n, bound) else {
            break;
        };
        for q in all.quiddities() {
            if let Some(r) = is_window_of(s, &q) {
                return Embedding::Witness(EtaSeq::trusted(crate::eta::rotated(&q, r as isize)));
            }
        }
    }
    Embedding::Unknown { bound }
}
