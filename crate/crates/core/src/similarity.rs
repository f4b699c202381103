//! Similarity types: orbits of quiddity sequences under rotation and
//! reversal, and their count `Kn`.
//!
//! Reversal here is `i ↦ n - 1 - i`. Together with the rotations it
//! generates the whole dihedral group, so orbits do not depend on which
//! reflection is picked; the reversal-fixed count does, and `Sn` below counts
//! sequences equal to their own reversal.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eta::{format_sequence, rotated, EtaSeq};
use crate::polygon::{catalan, enumerate_triangulations};

/// Brute-force counting refuses larger polygons unless told otherwise.
pub const DEFAULT_BRUTE_CAP: usize = 14;

/// Least image of a sequence under the dihedral group, and the orbit size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitCanon {
    pub canon: EtaSeq,
    pub orbit_size: usize,
}

/// All `2n` images: rotations first, then rotations of the reversal.
pub fn dihedral_images(q: &[u64]) -> Vec<Vec<u64>> {
    let n = q.len() as isize;
    let rev: Vec<u64> = q.iter().rev().copied().collect();
    (0..n)
        .map(|k| rotated(q, k))
        .chain((0..n).map(|k| rotated(&rev, k)))
        .collect()
}

pub fn canonicalize(q: &EtaSeq) -> OrbitCanon {
    let images: BTreeSet<Vec<u64>> = dihedral_images(q.entries()).into_iter().collect();
    OrbitCanon {
        orbit_size: images.len(),
        canon: EtaSeq::trusted(images.into_iter().next().expect("nonempty")),
    }
}

/// Whether `q` is the least of its images, without allocating them.
fn is_canonical(q: &[u64]) -> bool {
    let n = q.len();
    for k in 0..n {
        for dir in [false, true] {
            // image x ↦ q[k + x] or q[k - x]
            let at = |x: usize| {
                if dir {
                    q[(k + n - x % n) % n]
                } else {
                    q[(k + x) % n]
                }
            };
            for (x, &v) in q.iter().enumerate() {
                let w = at(x);
                if w < v {
                    return false;
                }
                if w > v {
                    break;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    Symmetric,
    PseudoSymmetric,
    Asymmetric,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Symmetric => "symmetric",
            Category::PseudoSymmetric => "pseudo-symmetric",
            Category::Asymmetric => "asymmetric",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeqClassification {
    pub period: usize,
    pub category: Category,
}

/// Least rotation fixing `q`.
pub fn period(q: &[u64]) -> usize {
    let n = q.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (0..n).all(|x| q[x] == q[(x + p) % n]))
        .unwrap_or(n)
}

/// Period and symmetry category. A sequence with a mirror axis is symmetric
/// when its period is odd and pseudo-symmetric when it is even.
pub fn classify(q: &EtaSeq) -> SeqClassification {
    let s = q.entries();
    let p = period(s);
    let rev: Vec<u64> = s.iter().rev().copied().collect();
    let n = s.len() as isize;
    let mirrored = (0..n).any(|k| rotated(s, k) == rev);
    let category = match (mirrored, p % 2 == 1) {
        (false, _) => Category::Asymmetric,
        (true, true) => Category::Symmetric,
        (true, false) => Category::PseudoSymmetric,
    };
    SeqClassification {
        period: p,
        category,
    }
}

/// `(Tn, Sn, An)`: all quiddity sequences, those equal to their reversal,
/// and the remaining pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tsa {
    pub t: BigUint,
    pub s: BigUint,
    pub a: BigUint,
}

pub fn count_tsa(n: usize) -> Result<Tsa> {
    if n < 3 {
        return Err(Error::TooShort(n));
    }
    Ok(tsa_unchecked(n))
}

/// Also defined at `n = 2`, the digon, as `(1, 1, 0)`.
fn tsa_unchecked(n: usize) -> Tsa {
    if n == 2 {
        return Tsa {
            t: BigUint::one(),
            s: BigUint::one(),
            a: BigUint::zero(),
        };
    }
    let t = catalan(n - 2);
    let s = if n.is_multiple_of(2) {
        BigUint::zero()
    } else {
        catalan((n - 1) / 2 - 1)
    };
    let a = (&t - &s) / 2u32;
    Tsa { t, s, a }
}

/// The same counts by enumerating triangulations.
pub fn count_tsa_brute(n: usize, cap: usize) -> Result<Tsa> {
    let (mut t, mut s) = (0u64, 0u64);
    for q in enumerate_triangulations(n, cap)?.quiddities() {
        t += 1;
        if q.iter().eq(q.iter().rev()) {
            s += 1;
        }
    }
    Ok(Tsa {
        t: t.into(),
        s: s.into(),
        a: ((t - s) / 2).into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Arc lengths `i >= j >= k` of a central triangle (or, with `k = 0`, of a
/// central diameter) of an `n`-gon, `n = i + j + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriPartition {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub case: Case,
}

impl TriPartition {
    pub fn n(&self) -> usize {
        self.i + self.j + self.k
    }

    pub fn parts(&self) -> [usize; 3] {
        [self.i, self.j, self.k]
    }
}

impl fmt::Display for TriPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// Every arc of the central cell is at most half the polygon; for even `n`
/// a half-length arc only occurs as the diameter `(m, m, 0)`.
pub fn perfect_tripartitions(n: usize) -> Vec<TriPartition> {
    let m = n / 2;
    let odd = n % 2 == 1;
    let mut out = Vec::new();
    let top = if odd { m } else { m - 1 };
    if !odd && n >= 4 {
        out.push(TriPartition { i: m, j: m, k: 0, case: Case::A });
    }
    for i in (1..=top).rev() {
        for j in (1..=i).rev() {
            let Some(k) = n.checked_sub(i + j) else { continue };
            if k == 0 || k > j {
                continue;
            }
            let case = if odd && i == m && j == m && k == 1 {
                Case::B
            } else if i > j && j > k {
                Case::C
            } else if i == j && j > k {
                Case::D
            } else if i > j && j == k {
                Case::E
            } else {
                Case::F
            };
            out.push(TriPartition { i, j, k, case });
        }
    }
    out
}

/// Similarity types whose central cell has the arcs of `tp`.
pub fn case_count(tp: &TriPartition) -> BigUint {
    let at = |part: usize| tsa_unchecked(part + 1);
    match tp.case {
        Case::A => {
            let Tsa { s, a, .. } = at(tp.i);
            &a * (&a + 1u32) + &a * &s + &s * (&s + 1u32) / 2u32
        }
        Case::B => {
            let t = at(tp.i).t;
            &t * (&t + 1u32) / 2u32
        }
        Case::C => at(tp.i).t * at(tp.j).t * at(tp.k).t,
        Case::D => {
            let (x, y) = (at(tp.i), at(tp.k));
            (&x.t * &x.t * &y.t + &x.t * &y.s) / 2u32
        }
        Case::E => {
            let (x, y) = (at(tp.i), at(tp.k));
            (&x.t * &y.t * &y.t + &x.s * &y.t) / 2u32
        }
        Case::F => {
            let Tsa { t, a, .. } = at(tp.i);
            &t * (&t + 1u32) * (&t + 2u32) / 6u32 - &t * &a
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Formula,
    /// Canonical forms over all triangulations, refusing `n > cap`.
    Brute { cap: usize },
}

/// `Kn`, the number of similarity types of `n`-gon friezes.
pub fn count_types(n: usize, method: Method) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::TooShort(n));
    }
    match method {
        Method::Formula => Ok(perfect_tripartitions(n).iter().map(case_count).sum()),
        Method::Brute { cap } => {
            let count = enumerate_triangulations(n, cap)?
                .quiddities()
                .par_bridge()
                .filter(|q| is_canonical(q))
                .count();
            Ok(BigUint::from(count))
        }
    }
}

/// A piece glued onto one side of the central cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Part {
    Polygon(EtaSeq),
    /// A single side, arc length 1, entries `(0, 0)`.
    Digon,
    /// No central triangle: the other two pieces share a diameter.
    Absent,
}

impl Part {
    fn entries(&self) -> &[u64] {
        match self {
            Part::Polygon(q) => q.entries(),
            Part::Digon => &[0, 0],
            Part::Absent => &[],
        }
    }
}

/// Joins sequences end to start around a cycle, adding `bonus` at each
/// junction: `z0 = a0 + c_last + bonus`, `z_u = a_last + b0 + bonus`, ...
fn glue(pieces: &[&[u64]], bonus: u64) -> Vec<u64> {
    let mut z: Vec<u64> = Vec::new();
    for p in pieces {
        match z.last_mut() {
            Some(last) => {
                *last += p[0] + bonus;
                z.extend_from_slice(&p[1..]);
            }
            None => z.extend_from_slice(p),
        }
    }
    let tail = z.pop().expect("nonempty");
    z[0] += tail + bonus;
    z
}

/// Quiddity sequence of the polygon made of a central triangle with `a`,
/// `b`, `c` glued on its sides in order. With one [`Part::Absent`] the
/// other two are glued along a shared side instead.
pub fn compose(a: &Part, b: &Part, c: &Part) -> Result<EtaSeq> {
    let parts = [a, b, c];
    let degenerate = parts.iter().filter(|p| !matches!(p, Part::Polygon(_))).count();
    if degenerate > 1 {
        return Err(Error::TooManyDegenerate(degenerate));
    }
    let z = match parts.iter().position(|p| **p == Part::Absent) {
        Some(x) => {
            let (p, q) = (parts[(x + 1) % 3], parts[(x + 2) % 3]);
            glue(&[p.entries(), q.entries()], 0)
        }
        None => glue(&[a.entries(), b.entries(), c.entries()], 1),
    };
    EtaSeq::new(z)
}

/// Every quiddity sequence of an `x`-gon (the digon for `x = 2`), listed by
/// expanding the similarity types of `x` into their orbits.
fn all_members(x: usize, cap: usize) -> Result<Vec<Part>> {
    if x == 2 {
        return Ok(vec![Part::Digon]);
    }
    let mut members = BTreeSet::new();
    for ty in enumerate_types(x, cap)? {
        members.extend(dihedral_images(ty.canon.entries()));
    }
    Ok(members
        .into_iter()
        .map(|q| Part::Polygon(EtaSeq::trusted(q)))
        .collect())
}

/// Representatives of all similarity types of `n`-gon friezes, sorted by
/// canonical form. Each perfect tri-partition contributes the compositions
/// of every member of the smaller polygons' orbits.
pub fn enumerate_types(n: usize, cap: usize) -> Result<Vec<OrbitCanon>> {
    if !(3..=cap).contains(&n) {
        return Err(Error::OutOfRange { n, min: 3, max: cap });
    }
    if n == 3 {
        return Ok(vec![canonicalize(&EtaSeq::base())]);
    }
    let mut canon = BTreeSet::new();
    for tp in perfect_tripartitions(n) {
        let xs = all_members(tp.i + 1, cap)?;
        let ys = all_members(tp.j + 1, cap)?;
        let zs = if tp.k == 0 {
            vec![Part::Absent]
        } else {
            all_members(tp.k + 1, cap)?
        };
        let found: BTreeSet<Vec<u64>> = xs
            .par_iter()
            .flat_map_iter(|x| {
                let (ys, zs) = (&ys, &zs);
                ys.iter().flat_map(move |y| {
                    zs.iter().map(move |z| {
                        let q = compose(x, y, z).expect("central-cell gluing is a triangulation");
                        canonicalize(&q).canon.into_entries()
                    })
                })
            })
            .collect();
        canon.extend(found);
    }
    Ok(canon
        .into_iter()
        .map(|q| canonicalize(&EtaSeq::trusted(q)))
        .collect())
}

/// Canonical forms of all triangulations, the brute-force counterpart of
/// [`enumerate_types`].
pub fn brute_types(n: usize, cap: usize) -> Result<Vec<OrbitCanon>> {
    let mut out: Vec<OrbitCanon> = enumerate_triangulations(n, cap)?
        .quiddities()
        .filter(|q| is_canonical(q))
        .map(|q| canonicalize(&EtaSeq::trusted(q)))
        .collect();
    out.sort();
    Ok(out)
}

impl fmt::Display for OrbitCanon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (orbit {})", format_sequence(self.canon.entries()), self.orbit_size)
    }
}
