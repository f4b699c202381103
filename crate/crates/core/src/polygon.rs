//! Triangulations of a convex polygon and their dual binary trees.
//!
//! Vertices are `0..n`, side `r` joins `r` and `r + 1 (mod n)`. The quiddity
//! entry of a vertex is the number of triangles it touches.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::eta::EtaSeq;

/// Largest polygon [`enumerate_triangulations`] accepts unless told otherwise.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// `C_k = binom(2k, k) / (k + 1)`.
pub fn catalan(k: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        // C_{i+1} = C_i · 2(2i+1) / (i+2)
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    n: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    // a < b and c < d; strict interleaving
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl Triangulation {
    /// Validates the vertex range, that no pair is a side, and that the
    /// `n - 3` diagonals pairwise do not cross.
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n < 3 {
            return Err(Error::MalformedTriangulation(format!(
                "a polygon needs at least 3 vertices, got {n}"
            )));
        }
        let mut set = BTreeSet::new();
        for (u, v) in diagonals {
            let (u, v) = (u.min(v), u.max(v));
            if v >= n {
                return Err(Error::MalformedTriangulation(format!(
                    "vertex {v} out of range for n = {n}"
                )));
            }
            if v - u < 2 || (u == 0 && v == n - 1) {
                return Err(Error::MalformedTriangulation(format!(
                    "{{{u},{v}}} is not a diagonal"
                )));
            }
            if !set.insert((u, v)) {
                return Err(Error::MalformedTriangulation(format!(
                    "diagonal {{{u},{v}}} repeated"
                )));
            }
        }
        if set.len() != n - 3 {
            return Err(Error::MalformedTriangulation(format!(
                "{} diagonals given, a triangulation of the {n}-gon has {}",
                set.len(),
                n - 3
            )));
        }
        for (x, &d) in set.iter().enumerate() {
            if let Some(&e) = set.iter().skip(x + 1).find(|&&e| crosses(d, e)) {
                return Err(Error::MalformedTriangulation(format!(
                    "diagonals {{{},{}}} and {{{},{}}} cross",
                    d.0, d.1, e.0, e.1
                )));
            }
        }
        Ok(Triangulation { n, diagonals: set })
    }

    fn trusted(n: usize, diagonals: BTreeSet<(usize, usize)>) -> Self {
        Triangulation { n, diagonals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Diagonals as `(u, v)` with `u < v`, sorted.
    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    fn is_edge(&self, u: usize, v: usize) -> bool {
        let (u, v) = (u.min(v), u.max(v));
        v - u == 1 || (u == 0 && v == self.n - 1) || self.diagonals.contains(&(u, v))
    }

    /// Triangles incident to each vertex.
    pub fn to_quiddity_vec(&self) -> Vec<u64> {
        let mut q = vec![1u64; self.n];
        for &(u, v) in &self.diagonals {
            q[u] += 1;
            q[v] += 1;
        }
        q
    }

    pub fn to_quiddity(&self) -> EtaSeq {
        EtaSeq::trusted(self.to_quiddity_vec())
    }

    /// Ear clipping: a 1 in the sequence is a vertex of exactly one
    /// triangle, whose opposite side becomes a diagonal.
    pub fn from_quiddity(q: &EtaSeq) -> Triangulation {
        Self::try_from_quiddity(q.entries()).expect("η-sequences are triangulable")
    }

    /// [`Triangulation::from_quiddity`] for an unchecked sequence; fails
    /// exactly when the sequence is not a quiddity sequence.
    pub fn try_from_quiddity(q: &[u64]) -> Result<Triangulation> {
        crate::eta::check_candidate(q)?;
        let n = q.len();
        let not_quiddity = || Error::NotQuiddity(crate::eta::format_sequence(q));
        let mut live: Vec<(usize, u64)> = q.iter().copied().enumerate().collect();
        let mut diagonals = BTreeSet::new();
        while live.len() > 3 {
            let m = live.len();
            let ear = (0..m)
                .find(|&x| {
                    live[x].1 == 1 && live[(x + m - 1) % m].1 >= 2 && live[(x + 1) % m].1 >= 2
                })
                .ok_or_else(not_quiddity)?;
            let (p, s) = ((ear + m - 1) % m, (ear + 1) % m);
            live[p].1 -= 1;
            live[s].1 -= 1;
            let (u, v) = (live[p].0, live[s].0);
            diagonals.insert((u.min(v), u.max(v)));
            live.remove(ear);
        }
        if live.iter().any(|&(_, c)| c != 1) {
            return Err(not_quiddity());
        }
        Ok(Triangulation::trusted(n, diagonals))
    }

    /// Triangles as sorted vertex triples, sorted.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::with_capacity(self.n - 2);
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.is_edge(a, b) {
                    continue;
                }
                for c in b + 1..self.n {
                    if self.is_edge(a, c) && self.is_edge(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Reflection `i ↦ n - 1 - i`.
    pub fn reflect(&self) -> Triangulation {
        let n = self.n;
        let d = self
            .diagonals
            .iter()
            .map(|&(u, v)| (n - 1 - v, n - 1 - u))
            .collect();
        Triangulation::trusted(n, d)
    }

    /// Relabels so that vertex `k` becomes vertex 0.
    pub fn rotate(&self, k: usize) -> Triangulation {
        let n = self.n;
        let d = self
            .diagonals
            .iter()
            .map(|&(u, v)| {
                let (a, b) = ((u + n - k % n) % n, (v + n - k % n) % n);
                (a.min(b), a.max(b))
            })
            .collect();
        Triangulation::trusted(n, d)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "diagonals": self.diagonals.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Triangulation> {
        let bad = |m: &str| Error::Parse(format!("triangulation JSON: {m}"));
        let n = value["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let diags = value["diagonals"]
            .as_array()
            .ok_or_else(|| bad("missing diagonals"))?
            .iter()
            .map(|p| match p.as_array().map(Vec::as_slice) {
                Some([u, v]) => match (u.as_u64(), v.as_u64()) {
                    (Some(u), Some(v)) => Ok((u as usize, v as usize)),
                    _ => Err(bad("diagonal endpoints must be non-negative integers")),
                },
                _ => Err(bad("each diagonal is a pair")),
            })
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(n, diags)
    }

    /// Undirected graph: sides solid, diagonals dashed, vertices labelled
    /// with their quiddity entry.
    pub fn to_dot(&self) -> String {
        let q = self.to_quiddity_vec();
        let mut s = String::from("graph triangulation {\n  layout=circo;\n");
        for (v, c) in q.iter().enumerate() {
            let _ = writeln!(s, "  v{v} [label=\"{v}:{c}\"];");
        }
        for v in 0..self.n {
            let _ = writeln!(s, "  v{v} -- v{};", (v + 1) % self.n);
        }
        for &(u, v) in &self.diagonals {
            let _ = writeln!(s, "  v{u} -- v{v} [style=dashed];");
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (x, (u, v)) in self.diagonals.iter().enumerate() {
            if x > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{{{u},{v}}}")?;
        }
        f.write_str("]")
    }
}

/// Shape of a full binary tree. Internal nodes are triangles, leaves are
/// polygon sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DualNode {
    Leaf,
    Internal(Box<DualNode>, Box<DualNode>),
}

impl DualNode {
    pub fn node(left: DualNode, right: DualNode) -> DualNode {
        DualNode::Internal(Box::new(left), Box::new(right))
    }

    pub fn internal_count(&self) -> usize {
        match self {
            DualNode::Leaf => 0,
            DualNode::Internal(l, r) => 1 + l.internal_count() + r.internal_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.internal_count() + 1
    }

    pub fn depth(&self) -> usize {
        match self {
            DualNode::Leaf => 0,
            DualNode::Internal(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// `(left run, interior entries, right run)`: triangles at the first
    /// vertex, at each vertex strictly inside, and at the last vertex of the
    /// polygon chain this subtree covers.
    fn runs(&self) -> (u64, Vec<u64>, u64) {
        match self {
            DualNode::Leaf => (0, Vec::new(), 0),
            DualNode::Internal(l, r) => {
                let (ll, mut lm, lr) = l.runs();
                let (rl, rm, rr) = r.runs();
                lm.push(lr + 1 + rl);
                lm.extend(rm);
                (ll + 1, lm, rr + 1)
            }
        }
    }

    fn bracket(&self, next: &mut usize, out: &mut String) {
        match self {
            DualNode::Leaf => {
                out.push_str(&side_label(*next));
                *next += 1;
            }
            DualNode::Internal(l, r) => {
                out.push('(');
                l.bracket(next, out);
                out.push(',');
                r.bracket(next, out);
                out.push(')');
            }
        }
    }
}

/// `a` for side 0 (the root), then `b`, `c`, ... and `s26`, `s27`, ...
/// once the alphabet runs out.
pub fn side_label(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("s{k}")
    }
}

/// Dual tree of a triangulation, rooted at a side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualTree {
    root_side: usize,
    root: DualNode,
}

impl DualTree {
    /// `root_side` must be below `root.leaf_count() + 1`.
    pub fn new(root: DualNode, root_side: usize) -> Result<Self> {
        let n = root.leaf_count() + 1;
        if root_side >= n {
            return Err(Error::InvalidInput(format!(
                "root side {root_side} out of range for the {n}-gon"
            )));
        }
        if root == DualNode::Leaf {
            return Err(Error::InvalidInput("a dual tree has at least one triangle".into()));
        }
        Ok(DualTree { root_side, root })
    }

    pub fn root(&self) -> &DualNode {
        &self.root
    }

    pub fn root_side(&self) -> usize {
        self.root_side
    }

    pub fn n(&self) -> usize {
        self.root.leaf_count() + 1
    }

    /// Depth-first run counts. Starts at vertex `root_side + 1` and goes
    /// around the polygon, so the default root `n - 1` gives `q0, q1, ...`.
    pub fn readout(&self) -> Vec<u64> {
        let (l, mut mids, r) = self.root.runs();
        mids.insert(0, l);
        mids.push(r);
        mids
    }

    /// The readout moved back to vertex order.
    pub fn to_quiddity(&self) -> EtaSeq {
        let n = self.n();
        let start = (self.root_side + 1) % n;
        EtaSeq::trusted(crate::eta::rotated(&self.readout(), -(start as isize)))
    }

    pub fn to_triangulation(&self) -> Triangulation {
        let n = self.n();
        let base = self.root_side + 1;
        let mut diagonals = BTreeSet::new();
        let mut stack = vec![(&self.root, 0usize, n - 1)];
        while let Some((node, x, y)) = stack.pop() {
            if let DualNode::Internal(l, r) = node {
                let w = x + l.leaf_count();
                for (a, b) in [(x, w), (w, y)] {
                    if b - a >= 2 {
                        let (u, v) = ((a + base) % n, (b + base) % n);
                        diagonals.insert((u.min(v), u.max(v)));
                    }
                }
                stack.push((l, x, w));
                stack.push((r, w, y));
            }
        }
        Triangulation::trusted(n, diagonals)
    }

    /// Nested pairs of side labels, e.g. `((b,c),d)` for the 12213 pentagon.
    pub fn to_bracket(&self) -> String {
        let mut s = String::new();
        let mut next = 1;
        self.root.bracket(&mut next, &mut s);
        s
    }

    pub fn to_dot(&self) -> String {
        fn walk(node: &DualNode, id: &mut usize, leaf: &mut usize, s: &mut String) -> usize {
            let me = *id;
            *id += 1;
            match node {
                DualNode::Leaf => {
                    let _ = writeln!(s, "  n{me} [shape=plaintext,label=\"{}\"];", side_label(*leaf));
                    *leaf += 1;
                }
                DualNode::Internal(l, r) => {
                    let _ = writeln!(s, "  n{me} [shape=circle,label=\"\"];");
                    let a = walk(l, id, leaf, s);
                    let b = walk(r, id, leaf, s);
                    let _ = writeln!(s, "  n{me} -> n{a};\n  n{me} -> n{b};");
                }
            }
            me
        }
        let mut s = String::from("digraph dual {\n  root [shape=plaintext,label=\"a\"];\n");
        let (mut id, mut leaf) = (0, 1);
        let top = walk(&self.root, &mut id, &mut leaf, &mut s);
        let _ = writeln!(s, "  root -> n{top};");
        s.push_str("}\n");
        s
    }
}

/// Dual tree of `t` rooted at side `root_side` (the side from `root_side`
/// to `root_side + 1`).
pub fn to_dual_tree(t: &Triangulation, root_side: usize) -> Result<DualTree> {
    let n = t.n;
    if root_side >= n {
        return Err(Error::InvalidInput(format!(
            "root side {root_side} out of range for the {n}-gon"
        )));
    }
    let base = root_side + 1;
    let vert = |x: usize| (x + base) % n;
    // chain positions 0..n-1 walk the polygon from root_side + 1 to root_side
    fn build(t: &Triangulation, vert: &dyn Fn(usize) -> usize, x: usize, y: usize) -> DualNode {
        if y - x == 1 {
            return DualNode::Leaf;
        }
        let w = (x + 1..y)
            .find(|&w| t.is_edge(vert(x), vert(w)) && t.is_edge(vert(w), vert(y)))
            .expect("every chord of a triangulation bounds a triangle");
        DualNode::node(build(t, vert, x, w), build(t, vert, w, y))
    }
    Ok(DualTree {
        root_side,
        root: build(t, &vert, 0, n - 1),
    })
}

/// Advances a Dyck word (`true` = open) to its lexicographic successor with
/// open before close. Returns `false` after the last word.
fn next_dyck(w: &mut [bool]) -> bool {
    let len = w.len();
    let m = len / 2;
    let (mut opens, mut closes) = (m, m);
    for i in (0..len).rev() {
        if w[i] {
            opens -= 1;
        } else {
            closes -= 1;
        }
        // opens/closes now count w[..i]
        if w[i] && opens > closes {
            w[i] = false;
            let need = m - opens;
            for (x, slot) in w[i + 1..].iter_mut().enumerate() {
                *slot = x < need;
            }
            return true;
        }
    }
    false
}

/// Decodes `D = ( L ) R` into the node with left subtree `L` and right
/// subtree `R`, writing the diagonals of the triangulation whose chain
/// starts at `x`.
fn dyck_diagonals(w: &[bool], out: &mut Vec<(usize, usize)>) {
    out.clear();
    // (start of word slice, end, chain start)
    let mut stack = vec![(0usize, w.len(), 0usize)];
    while let Some((s, e, x)) = stack.pop() {
        if s == e {
            continue;
        }
        let mut depth = 0i32;
        let mut close = s;
        for (k, &b) in w[s..e].iter().enumerate() {
            depth += if b { 1 } else { -1 };
            if depth == 0 {
                close = s + k;
                break;
            }
        }
        let left_internal = (close - s - 1) / 2;
        let total_internal = (e - s) / 2;
        let w_pos = x + left_internal + 1;
        let y = x + total_internal + 1;
        if w_pos - x >= 2 {
            out.push((x, w_pos));
        }
        if y - w_pos >= 2 {
            out.push((w_pos, y));
        }
        stack.push((s + 1, close, x));
        stack.push((close + 1, e, w_pos));
    }
}

/// All triangulations of an `n`-gon, in lexicographic order of their dual
/// trees written as Dyck words (`( left ) right`, open before close). The
/// first is the fan from vertex 0.
pub struct Triangulations {
    n: usize,
    word: Vec<bool>,
    done: bool,
    buf: Vec<(usize, usize)>,
}

impl Triangulations {
    fn new(n: usize) -> Self {
        let m = n - 2;
        let word = (0..2 * m).map(|x| x < m).collect();
        Triangulations {
            n,
            word,
            done: false,
            buf: Vec::with_capacity(n),
        }
    }

    /// Quiddity sequences only, without building diagonal sets.
    pub fn quiddities(self) -> impl Iterator<Item = Vec<u64>> {
        let n = self.n;
        let mut word = self.word;
        let mut done = self.done;
        let mut buf = self.buf;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            dyck_diagonals(&word, &mut buf);
            let mut q = vec![1u64; n];
            for &(u, v) in &buf {
                q[u] += 1;
                q[v] += 1;
            }
            done = !next_dyck(&mut word);
            Some(q)
        })
    }
}

impl Iterator for Triangulations {
    type Item = Triangulation;

    fn next(&mut self) -> Option<Triangulation> {
        if self.done {
            return None;
        }
        dyck_diagonals(&self.word, &mut self.buf);
        let t = Triangulation::trusted(self.n, self.buf.iter().copied().collect());
        self.done = !next_dyck(&mut self.word);
        Some(t)
    }
}

/// Every triangulation of an `n`-gon, `3 <= n <= cap`.
pub fn enumerate_triangulations(n: usize, cap: usize) -> Result<Triangulations> {
    if !(3..=cap).contains(&n) {
        return Err(Error::OutOfRange { n, min: 3, max: cap });
    }
    Ok(Triangulations::new(n))
}
