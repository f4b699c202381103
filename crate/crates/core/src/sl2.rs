//! Exact arithmetic in SL₂(ℤ).
//!
//! Matrices carry arbitrary-precision entries. Words are products of the
//! generators
//!
//! ```text
//! S = [[0, 1], [-1, 0]]    T = [[0, 1], [-1, -1]]    U = [[1, 0], [1, 1]]
//! ```
//!
//! and are always evaluated as the ordinary matrix product of the letters in
//! the order they are written: the word `U^2*S*U*S` is the matrix
//! `U·U·S·U·S`. When such a product acts on column vectors, the rightmost
//! letter acts first. Every other module in the crate uses this convention.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// A 2×2 integer matrix of determinant 1, stored row-major as `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Mat2 {
    /// Builds a matrix, rejecting entries whose determinant is not 1.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = Mat2::raw(a.into(), b.into(), c.into(), d.into());
        let det = m.det();
        if det.is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular {
                a: m.a.to_string(),
                b: m.b.to_string(),
                c: m.c.to_string(),
                d: m.d.to_string(),
                det: det.to_string(),
            })
        }
    }

    /// Constructor for callers that already know the determinant is 1.
    pub(crate) fn raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Mat2 { a, b, c, d }
    }

    fn small(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::raw(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Mat2::small(1, 0, 0, 1)
    }

    pub fn minus_identity() -> Self {
        Mat2::small(-1, 0, 0, -1)
    }

    pub fn s() -> Self {
        Mat2::small(0, 1, -1, 0)
    }

    pub fn t() -> Self {
        Mat2::small(0, 1, -1, -1)
    }

    pub fn u() -> Self {
        Mat2::small(1, 0, 1, 1)
    }

    /// `U^k = [[1, 0], [k, 1]]`.
    pub fn u_pow(k: impl Into<BigInt>) -> Self {
        Mat2::raw(BigInt::one(), BigInt::zero(), k.into(), BigInt::one())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    pub fn is_minus_identity(&self) -> bool {
        *self == Mat2::minus_identity()
    }

    /// True for `I` and `-I`.
    pub fn is_central(&self) -> bool {
        self.is_identity() || self.is_minus_identity()
    }

    pub fn inverse(&self) -> Self {
        Mat2::raw(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Mat2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        Value::Array(vec![
            Value::Array(vec![int_json(&self.a), int_json(&self.b)]),
            Value::Array(vec![int_json(&self.c), int_json(&self.d)]),
        ])
    }

    /// Parses the JSON form `[[a,b],[c,d]]`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let rows = value
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| Error::Parse("matrix must be [[a,b],[c,d]]".into()))?;
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == 2)
                .ok_or_else(|| Error::Parse("matrix rows must have two entries".into()))?;
            for x in row {
                entries.push(json_int(x)?);
            }
        }
        let [a, b, c, d]: [BigInt; 4] = entries.try_into().expect("four entries");
        Mat2::new(a, b, c, d)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Mat2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
        Mat2::from_json(&value)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2::raw(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        Mat2::raw(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        -&self
    }
}

pub(crate) fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::Number(
            x.to_string()
                .parse()
                .expect("decimal integers are valid JSON numbers"),
        ),
    }
}

pub(crate) fn json_int(x: &Value) -> Result<BigInt> {
    match x {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("{n} is not an integer"))),
        other => Err(Error::Parse(format!("{other} is not an integer"))),
    }
}

/// A generator of SL₂(ℤ) used in words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    S,
    T,
    U,
}

/// A generator raised to an integer power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: Generator, exponent: i64) -> Self {
        Letter {
            generator,
            exponent,
        }
    }

    pub fn eval(&self) -> Mat2 {
        match self.generator {
            Generator::S => Mat2::s().pow(self.exponent.rem_euclid(4)),
            Generator::T => Mat2::t().pow(self.exponent.rem_euclid(3)),
            Generator::U => Mat2::u_pow(self.exponent),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.generator {
            Generator::S => "S",
            Generator::T => "T",
            Generator::U => "U",
        };
        if self.exponent == 1 {
            write!(f, "{g}")
        } else {
            write!(f, "{g}^{}", self.exponent)
        }
    }
}

/// A product of generator powers, written `U^2*S*U*S`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn eval(&self) -> Mat2 {
        self.0
            .iter()
            .fold(Mat2::identity(), |acc, l| &acc * &l.eval())
    }

    /// Recognises words of the shape `S^b0 U^a1 S U^a2 S ... U^an S^b1`.
    pub fn to_su_word(&self) -> Option<SUWord> {
        let letters = &self.0;
        if letters.iter().any(|l| l.generator == Generator::T) {
            return None;
        }
        let is_s = |l: &Letter| l.generator == Generator::S && l.exponent == 1;
        let mut idx = 0;
        let prefix_s = letters.first().is_some_and(&is_s)
            && letters.get(1).is_none_or(|l| l.generator == Generator::U);
        if prefix_s {
            idx = 1;
        }
        let mut factors = Vec::new();
        let mut trailing_s = false;
        while idx < letters.len() {
            let l = letters[idx];
            if l.generator != Generator::U {
                return None;
            }
            factors.push(l.exponent);
            idx += 1;
            match letters.get(idx) {
                None => break,
                Some(s) if is_s(s) => {
                    idx += 1;
                    if idx == letters.len() {
                        trailing_s = true;
                    }
                }
                Some(_) => return None,
            }
        }
        if factors.is_empty() && !prefix_s && !letters.is_empty() {
            return None;
        }
        Some(SUWord {
            prefix_s,
            factors,
            trailing_s,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Tokens `S`, `T`, `U`, optionally `^k` with `k` a (possibly negative)
    /// integer, separated by `*`. `I` denotes the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "I" || s.is_empty() {
            return Ok(Word::default());
        }
        let mut letters = Vec::new();
        for token in s.split('*') {
            let token = token.trim();
            let (head, exp) = match token.split_once('^') {
                Some((h, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in token {token:?}")))?;
                    (h.trim(), e)
                }
                None => (token, 1),
            };
            let generator = match head {
                "S" => Generator::S,
                "T" => Generator::T,
                "U" => Generator::U,
                _ => return Err(Error::Parse(format!("unknown token {token:?}"))),
            };
            letters.push(Letter::new(generator, exp));
        }
        Ok(Word(letters))
    }
}

/// The word `S^b0 · U^a1 S · U^a2 S ··· U^an · S^b1`.
///
/// Each factor `a_i` stands for `U^{a_i}` followed by an `S`, except that the
/// final `S` is present only when `trailing_s` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SUWord {
    pub prefix_s: bool,
    pub factors: Vec<i64>,
    pub trailing_s: bool,
}

impl SUWord {
    pub fn new(prefix_s: bool, factors: Vec<i64>, trailing_s: bool) -> Self {
        SUWord {
            prefix_s,
            factors,
            trailing_s,
        }
    }

    /// `U^{c0} S U^{c1} S ... U^{c_{n-1}} S`, the word attached to a sequence.
    pub fn from_sequence(entries: &[u64]) -> Self {
        SUWord::new(false, entries.iter().map(|&c| c as i64).collect(), true)
    }

    pub fn eval(&self) -> Mat2 {
        self.to_word().eval()
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(2 * self.factors.len() + 2);
        if self.prefix_s {
            letters.push(Letter::new(Generator::S, 1));
        }
        for (i, &a) in self.factors.iter().enumerate() {
            letters.push(Letter::new(Generator::U, a));
            if i + 1 < self.factors.len() || self.trailing_s {
                letters.push(Letter::new(Generator::S, 1));
            }
        }
        if self.factors.is_empty() && self.trailing_s {
            letters.push(Letter::new(Generator::S, 1));
        }
        Word(letters)
    }

    /// Cyclic shift of the factor list by `k` positions to the left.
    pub fn rotate(&self, k: usize) -> Self {
        let mut factors = self.factors.clone();
        if !factors.is_empty() {
            let k = k % factors.len();
            factors.rotate_left(k);
        }
        SUWord::new(self.prefix_s, factors, self.trailing_s)
    }
}

impl fmt::Display for SUWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// Order of a group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// Torsion in SL₂(ℤ) has order at most 6, so powers up to 12 suffice.
const MAX_TORSION_EXPONENT: u32 = 12;

/// Exact order of `m`, classified by its trace.
pub fn element_order(m: &Mat2) -> Order {
    let tr = m.trace();
    if tr.abs() > BigInt::from(2) {
        return Order::Infinite;
    }
    if tr == BigInt::from(2) {
        return if m.is_identity() {
            Order::Finite(1)
        } else {
            Order::Infinite
        };
    }
    if tr == BigInt::from(-2) {
        return if m.is_minus_identity() {
            Order::Finite(2)
        } else {
            Order::Infinite
        };
    }
    let mut acc = m.clone();
    for k in 1..=MAX_TORSION_EXPONENT {
        if acc.is_identity() {
            return Order::Finite(k);
        }
        acc = &acc * m;
    }
    unreachable!("elliptic elements of SL2(Z) have order 3, 4 or 6")
}

/// `±T^{lead} · S T^{e1} · S T^{e2} ··· S T^{en} · S^{trailing}` with every
/// `e_i ∈ {1, 2}`.
///
/// `lead` ranges over `{0, 1, 2}`: a leading `T^2` cannot be absorbed
/// elsewhere (for example the element `T^2` itself).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TSNormalForm {
    pub negative: bool,
    pub lead: u8,
    pub exponents: Vec<u8>,
    pub trailing_s: bool,
}

impl TSNormalForm {
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        if self.lead > 0 {
            letters.push(Letter::new(Generator::T, self.lead as i64));
        }
        for &e in &self.exponents {
            letters.push(Letter::new(Generator::S, 1));
            letters.push(Letter::new(Generator::T, e as i64));
        }
        if self.trailing_s {
            letters.push(Letter::new(Generator::S, 1));
        }
        Word(letters)
    }

    pub fn eval(&self) -> Mat2 {
        let m = self.to_word().eval();
        if self.negative {
            -m
        } else {
            m
        }
    }
}

impl fmt::Display for TSNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        self.to_word().fmt(f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tok {
    S,
    T(u8),
}

/// Free reduction in `⟨S, T | S⁴ = T³ = 1, S² central⟩`.
struct Reducer {
    stack: Vec<Tok>,
    negative: bool,
}

impl Reducer {
    fn push(&mut self, tok: Tok) {
        match (self.stack.last().copied(), tok) {
            (Some(Tok::S), Tok::S) => {
                self.stack.pop();
                self.negative = !self.negative;
            }
            (Some(Tok::T(e)), Tok::T(f)) => {
                self.stack.pop();
                let g = (e + f) % 3;
                if g != 0 {
                    self.stack.push(Tok::T(g));
                }
            }
            _ => self.stack.push(tok),
        }
    }

    /// `U = S T²`.
    fn push_u(&mut self) {
        self.push(Tok::S);
        self.push(Tok::T(2));
    }

    /// `U⁻¹ = -T S`.
    fn push_u_inverse(&mut self) {
        self.negative = !self.negative;
        self.push(Tok::T(1));
        self.push(Tok::S);
    }

    fn push_u_pow(&mut self, k: &BigInt) {
        let count = k
            .abs()
            .to_u64()
            .expect("U exponent in normal form exceeds u64");
        for _ in 0..count {
            if k.is_positive() {
                self.push_u();
            } else {
                self.push_u_inverse();
            }
        }
    }
}

/// Normal form of `m` as an alternating word in `S` and `T`.
///
/// The matrix is first written as `U^{x1} S⁻¹ U^{x2} S⁻¹ ··· ±U^{y}` by a
/// Euclidean descent on its second column, then every `U` is rewritten with
/// `U = S T²` and the word is freely reduced.
pub fn ts_normal_form(m: &Mat2) -> TSNormalForm {
    let mut cur = m.clone();
    let mut steps: Vec<BigInt> = Vec::new();
    while !cur.b.is_zero() {
        let k = -cur.d.div_floor(&cur.b);
        cur = &Mat2::u_pow(k.clone()) * &cur;
        cur = &Mat2::s() * &cur;
        steps.push(k);
    }
    // cur = ε·U^{ε c}
    let eps_negative = cur.a.is_negative();
    let tail = if eps_negative { -&cur.c } else { cur.c.clone() };

    let mut r = Reducer {
        stack: Vec::new(),
        negative: eps_negative,
    };
    for k in &steps {
        r.push_u_pow(&-k);
        // S⁻¹ = -S
        r.negative = !r.negative;
        r.push(Tok::S);
    }
    r.push_u_pow(&tail);

    let mut toks = r.stack.into_iter().peekable();
    let lead = match toks.peek() {
        Some(Tok::T(e)) => {
            let e = *e;
            toks.next();
            e
        }
        _ => 0,
    };
    let mut exponents = Vec::new();
    let mut trailing_s = false;
    while let Some(tok) = toks.next() {
        debug_assert!(tok == Tok::S);
        match toks.next() {
            Some(Tok::T(e)) => exponents.push(e),
            Some(Tok::S) => unreachable!("reduced words alternate"),
            None => trailing_s = true,
        }
    }
    TSNormalForm {
        negative: r.negative,
        lead,
        exponents,
        trailing_s,
    }
}

/// Whether `X·U^a·S = U^b·S·X`.
pub fn check_conjugation_lemma(x: &Mat2, a: i64, b: i64) -> bool {
    let lhs = &(x * &Mat2::u_pow(a)) * &Mat2::s();
    let rhs = &(&Mat2::u_pow(b) * &Mat2::s()) * x;
    lhs == rhs
}

/// Whether `(U^{a+1}S)(US)(U^{b+1}S) = (U^a S)(U^b S)`.
pub fn check_cancellation_identity(a: i64, b: i64) -> bool {
    let lhs = SUWord::new(false, vec![a + 1, 1, b + 1], true).eval();
    let rhs = SUWord::new(false, vec![a, b], true).eval();
    lhs == rhs
}
