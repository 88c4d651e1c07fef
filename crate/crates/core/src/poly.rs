//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! Every object in the crate is a [`Poly`] over a single structured variable
//! universe ([`Var`]). Terms are kept sorted in the canonical order (weighted
//! degree descending, then lexicographic over the variable order), so two
//! equal polynomials always have identical term vectors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symbol families, in their fixed total order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    Y,
    Z,
    Q,
    QP,
    QPP,
    C,
    D,
    B,
    T,
    G,
    H,
}

impl Family {
    pub fn is_indexed_pair(self) -> bool {
        matches!(
            self,
            Family::C | Family::D | Family::B | Family::T | Family::G | Family::H
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::Y => "y",
            Family::Z => "z",
            Family::Q => "q",
            Family::QP => "qp",
            Family::QPP => "qpp",
            Family::C => "c",
            Family::D => "d",
            Family::B => "b",
            Family::T => "t",
            Family::G => "g",
            Family::H => "h",
        }
    }

    fn from_name(s: &str) -> Option<Family> {
        Some(match s {
            "x" => Family::X,
            "y" => Family::Y,
            "z" => Family::Z,
            "q" => Family::Q,
            "qp" => Family::QP,
            "qpp" => Family::QPP,
            "c" => Family::C,
            "d" => Family::D,
            "b" => Family::B,
            "t" => Family::T,
            "g" => Family::G,
            "h" => Family::H,
            _ => return None,
        })
    }
}

/// A single symbol. Single-index families keep `j == 0`.
///
/// Field order gives the derived `Ord`: family first, then indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub i: i32,
    pub j: i32,
}

impl Var {
    pub fn single(family: Family, i: i32) -> Var {
        debug_assert!(!family.is_indexed_pair());
        Var { family, i, j: 0 }
    }

    pub fn pair(family: Family, i: i32, j: i32) -> Var {
        debug_assert!(family.is_indexed_pair());
        Var { family, i, j }
    }

    pub fn x(i: usize) -> Var {
        Var::single(Family::X, i as i32)
    }

    pub fn y(i: usize) -> Var {
        Var::single(Family::Y, i as i32)
    }

    pub fn z(i: usize) -> Var {
        Var::single(Family::Z, i as i32)
    }

    /// Weighted degree used for homogeneity bookkeeping.
    pub fn degree(&self) -> i64 {
        match self.family {
            Family::X | Family::Y | Family::Z => 1,
            Family::Q | Family::QP | Family::QPP | Family::T => 2,
            Family::C | Family::D | Family::B | Family::H => self.i as i64,
            Family::G => self.j as i64 + 1,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_indexed_pair() {
            write!(f, "{}[{},{}]", self.family.name(), self.i, self.j)
        } else {
            write!(f, "{}{}", self.family.name(), self.i)
        }
    }
}

/// Exponent vector: sorted by variable, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// `x1^e1 * x2^e2 * ...` for an exponent vector in the given single-index family.
    pub fn from_exponents(family: Family, exps: &[u32]) -> Monomial {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| (Var::single(family, k as i32 + 1), e))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.0.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(k) => self.0[k].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(v, e)| v.degree() * *e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Split into (factors whose family is in `fams`, the rest).
    pub fn split(&self, fams: &[Family]) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| fams.contains(&v.family));
        (Monomial(a), Monomial(b))
    }

    fn map_vars(&self, f: &impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

/// Canonical term order: weighted degree descending, then lex where a larger
/// exponent on the first differing (smallest) variable sorts first.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let da = a.degree();
    let db = b.degree();
    if da != db {
        return db.cmp(&da);
    }
    lex_cmp(a, b).reverse()
}

/// Plain lexicographic comparison (larger exponent on the smaller variable is larger).
pub fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (x, y) = (&a.0, &b.0);
    let mut i = 0;
    while i < x.len() && i < y.len() {
        let (va, ea) = x[i];
        let (vb, eb) = y[i];
        if va != vb {
            return if va < vb { Ordering::Greater } else { Ordering::Less };
        }
        if ea != eb {
            return ea.cmp(&eb);
        }
        i += 1;
    }
    x.len().cmp(&y.len())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Poly {
        let c = c.into();
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(1, Monomial::var(v))
    }

    pub fn x(i: usize) -> Poly {
        Poly::var(Var::x(i))
    }

    pub fn y(i: usize) -> Poly {
        Poly::var(Var::y(i))
    }

    pub fn z(i: usize) -> Poly {
        Poly::var(Var::z(i))
    }

    /// q-type parameter of the given family (Q, QP, QPP).
    pub fn param(family: Family, i: usize) -> Poly {
        Poly::var(Var::single(family, i as i32))
    }

    /// `c_i(j)`-style symbol (families C, D, B) with the folding rules
    /// `c_0(j) = 1` and `c_i(j) = 0` for `i < 0` or `i > j`.
    pub fn flagged(family: Family, i: i32, j: i32) -> Poly {
        debug_assert!(matches!(family, Family::C | Family::D | Family::B));
        if i == 0 {
            Poly::one()
        } else if i < 0 || i > j {
            Poly::zero()
        } else {
            Poly::var(Var::pair(family, i, j))
        }
    }

    pub fn c(i: i32, j: i32) -> Poly {
        Poly::flagged(Family::C, i, j)
    }

    pub fn d(i: i32, j: i32) -> Poly {
        Poly::flagged(Family::D, i, j)
    }

    pub fn b(i: i32, j: i32) -> Poly {
        Poly::flagged(Family::B, i, j)
    }

    /// `t_{ij}` with unordered-pair semantics; `t_{ii}` is not a symbol.
    pub fn t(i: i32, j: i32) -> Poly {
        assert!(i != j, "t[{i},{j}] is not a symbol");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Poly::var(Var::pair(Family::T, a, b))
    }

    /// `g_i[j]`, a free symbol.
    pub fn g(i: i32, j: i32) -> Poly {
        Poly::var(Var::pair(Family::G, i, j))
    }

    /// `h_i(k)` with `h_0(k) = 1` and `h_i(k) = 0` for `i < 0`.
    pub fn h(i: i32, k: i32) -> Poly {
        match i.cmp(&0) {
            Ordering::Less => Poly::zero(),
            Ordering::Equal => Poly::one(),
            Ordering::Greater => Poly::var(Var::pair(Family::H, i, k)),
        }
    }

    /// Build from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Poly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Poly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| canonical_cmp(&a.0, &b.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Leading term in the canonical order.
    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    /// `Some(d)` if every term has weighted degree `d`; zero is homogeneous of any degree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn max_degree(&self) -> i64 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // Multiplying by a monomial can change relative order (weights differ), so resort.
        let mut terms: Vec<_> = self.terms.iter().map(|(mm, k)| (mm.mul(m), k * c)).collect();
        terms.sort_unstable_by(|a, b| canonical_cmp(&a.0, &b.0));
        Poly { terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Set of variables appearing.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.0.iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_family(&self, fam: Family) -> bool {
        self.terms
            .iter()
            .any(|(m, _)| m.0.iter().any(|(v, _)| v.family == fam))
    }

    /// Rename variables through an injective map.
    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Rename one family into another, keeping indices.
    pub fn rename_family(&self, from: Family, to: Family) -> Poly {
        self.map_vars(|v| if v.family == from { Var { family: to, ..v } } else { v })
    }

    /// Simultaneous substitution; unassigned variables pass through.
    pub fn substitute(&self, assignment: &HashMap<Var, Poly>) -> Poly {
        let mut powers: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in &m.0 {
                match assignment.get(&v) {
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        factor = &factor * &*pw;
                        if factor.is_zero() {
                            break;
                        }
                    }
                    None => kept.push((v, e)),
                }
            }
            if factor.is_zero() {
                continue;
            }
            let kept = Monomial(kept);
            for (fm, fc) in factor.terms {
                let mm = fm.mul(&kept);
                *acc.entry(mm).or_insert_with(BigInt::zero) += fc;
            }
        }
        Poly::from_map(acc)
    }

    /// Substitution through a closure; `None` leaves the variable unchanged.
    pub fn substitute_with(&self, f: impl Fn(Var) -> Option<Poly>) -> Poly {
        let assignment: HashMap<Var, Poly> = self
            .vars()
            .into_iter()
            .filter_map(|v| f(v).map(|p| (v, p)))
            .collect();
        self.substitute(&assignment)
    }

    /// Coefficient of the monomial `m` (whose factors all lie in `fams`)
    /// when `self` is viewed as a polynomial in the families `fams`.
    pub fn coefficient_of(&self, m: &Monomial, fams: &[Family]) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(mm, c)| {
            let (inside, rest) = mm.split(fams);
            (inside == *m).then(|| (rest, c.clone()))
        }))
    }

    /// Group by monomials in `fams`: returns (monomial in fams, coefficient poly) pairs.
    pub fn collect_in(&self, fams: &[Family]) -> Vec<(Monomial, Poly)> {
        let mut groups: HashMap<Monomial, Vec<(Monomial, BigInt)>> = HashMap::new();
        for (m, c) in &self.terms {
            let (inside, rest) = m.split(fams);
            groups.entry(inside).or_default().push((rest, c.clone()));
        }
        let mut out: Vec<(Monomial, Poly)> = groups
            .into_iter()
            .map(|(k, v)| (k, Poly::from_terms(v)))
            .collect();
        out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        out
    }

    /// Exact division; fails with `NotDivisible` unless `g` divides `self`.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly> {
        let (lm, lc) = g.leading().ok_or(Error::DivisionByZero)?.clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let qm = m.div(&lm).ok_or(Error::NotDivisible)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            rem = &rem - &g.mul_monomial(&qm, &qc);
            quot.push((qm, qc));
        }
        Ok(Poly::from_terms(quot))
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<Poly> {
        Parser::new(s).parse_poly()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&JsonPoly::from(self)).expect("serializing a polynomial cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Poly> {
        let jp: JsonPoly =
            serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        jp.try_into()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Poly {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

fn merge_add(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)], negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &BigInt| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match canonical_cmp(&a[i].0, &b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0.clone(), nb(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), nb(c))));
    Poly { terms: out }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        merge_add(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge_add(&self.terms, &rhs.terms, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly::from_map(acc)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Poly> for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        *self = &*self - &rhs;
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for p in iter {
            for (m, c) in p.terms {
                *acc.entry(m).or_insert_with(BigInt::zero) += c;
            }
        }
        Poly::from_map(acc)
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |a, b| &a * &b)
    }
}

// ---------------------------------------------------------------------------
// Determinants

/// Exact determinant of a square polynomial matrix. The empty matrix has determinant 1.
pub fn det(m: &[Vec<Poly>]) -> Result<Poly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare);
    }
    if is_upper_hessenberg(m) {
        Ok(det_hessenberg(m))
    } else if n <= 6 {
        Ok(det_laplace(m))
    } else {
        det_bareiss(m)
    }
}

fn is_upper_hessenberg(m: &[Vec<Poly>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().take(i.saturating_sub(1)).all(Poly::is_zero))
}

/// Upper Hessenberg recurrence on leading principal minors:
/// `D_k = Σ_i (−1)^{k−i} a_{ik} (Π_{m=i}^{k−1} a_{m+1,m}) D_{i−1}`.
fn det_hessenberg(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let mut minors = vec![Poly::one()];
    for k in 0..n {
        let mut acc = Poly::zero();
        let mut sub = Poly::one();
        for i in (0..=k).rev() {
            if i < k {
                sub = &sub * &m[i + 1][i];
                if sub.is_zero() {
                    break;
                }
            }
            if m[i][k].is_zero() || minors[i].is_zero() {
                continue;
            }
            let term = &(&m[i][k] * &sub) * &minors[i];
            if (k - i) % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        minors.push(acc);
    }
    minors.pop().unwrap()
}

/// Laplace expansion along rows, memoized on the set of used columns.
fn det_laplace(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    // minors[mask] = det of rows (n - popcount(mask))..n restricted to columns in mask
    let mut minors: HashMap<u32, Poly> = HashMap::new();
    minors.insert(0, Poly::one());
    for size in 1..=n {
        let row = n - size;
        let mut next: HashMap<u32, Poly> = HashMap::new();
        for (&mask, sub) in &minors {
            if sub.is_zero() {
                continue;
            }
            for col in 0..n {
                let bit = 1u32 << col;
                if mask & bit != 0 {
                    continue;
                }
                let entry = &m[row][col];
                if entry.is_zero() {
                    continue;
                }
                // Laplace sign: position of `col` among the columns of mask|bit.
                let left = (mask & (bit - 1)).count_ones();
                let term = entry * sub;
                let slot = next.entry(mask | bit).or_insert_with(Poly::zero);
                if left.is_multiple_of(2) {
                    *slot += &term;
                } else {
                    *slot -= &term;
                }
            }
        }
        minors = next;
    }
    minors.remove(&((1u32 << n) - 1)).unwrap_or_else(Poly::zero)
}

/// Fraction-free Bareiss elimination.
fn det_bareiss(m: &[Vec<Poly>]) -> Result<Poly> {
    let n = m.len();
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut sign = 1i64;
    let mut prev = Poly::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Poly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_divide(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -d } else { d })
}

// ---------------------------------------------------------------------------
// Text parsing

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { src: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected unsigned integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i32> {
        let neg = self.eat(b'-');
        let v = self.uint()?;
        let v: i32 = i32::try_from(v).or_else(|_| self.err("index out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn parse_poly(&mut self) -> Result<Poly> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        if self.eat(b'-') {
            sign = -1;
        } else {
            self.eat(b'+');
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * sign));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) => return self.err("expected '+' or '-'"),
            }
        }
        Ok(Poly::from_terms(terms))
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut coeff = BigInt::one();
        let mut factors = Vec::new();
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                coeff = self.uint()?;
                if !self.eat(b'*') {
                    return Ok((Monomial::one(), coeff));
                }
                factors.push(self.factor()?);
            }
            Some(b) if b.is_ascii_alphabetic() => factors.push(self.factor()?),
            _ => return self.err("expected term"),
        }
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        Ok((Monomial::from_pairs(factors), coeff))
    }

    fn factor(&mut self) -> Result<(Var, u32)> {
        let v = self.var()?;
        let e = if self.eat(b'^') {
            let e = self.uint()?;
            u32::try_from(e).or_else(|_| self.err("exponent out of range"))?
        } else {
            1
        };
        Ok((v, e))
    }

    fn var(&mut self) -> Result<Var> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let fam = match Family::from_name(name) {
            Some(f) => f,
            None => {
                self.pos = start;
                return self.err("unknown variable family");
            }
        };
        if fam.is_indexed_pair() {
            if self.src.get(self.pos) != Some(&b'[') {
                return self.err("expected '['");
            }
            self.pos += 1;
            let i = self.small_int()?;
            if !self.eat(b',') {
                return self.err("expected ','");
            }
            let j = self.small_int()?;
            if !self.eat(b']') {
                return self.err("expected ']'");
            }
            validate_pair(fam, i, j).map_err(|msg| Error::Parse { pos: self.pos, msg })?;
            Ok(Var::pair(fam, i, j))
        } else {
            let digits = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if digits == self.pos {
                return self.err("expected variable index");
            }
            let s = std::str::from_utf8(&self.src[digits..self.pos]).unwrap();
            let i: i32 = s.parse().or_else(|_| self.err("index out of range"))?;
            Ok(Var::single(fam, i))
        }
    }
}

/// Symbols that would fold to constants are rejected rather than silently folded.
fn validate_pair(fam: Family, i: i32, j: i32) -> std::result::Result<(), String> {
    match fam {
        Family::C | Family::D | Family::B if i <= 0 || i > j => {
            Err(format!("{}[{i},{j}] is a constant, not a symbol", fam.name()))
        }
        Family::T if i >= j => Err(format!("t[{i},{j}] requires i < j")),
        Family::H if i <= 0 => Err(format!("h[{i},{j}] is a constant, not a symbol")),
        _ => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// JSON form

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    monomial: BTreeMap<String, u32>,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    terms: Vec<JsonTerm>,
}

impl From<&Poly> for JsonPoly {
    fn from(p: &Poly) -> JsonPoly {
        JsonPoly {
            terms: p
                .terms
                .iter()
                .map(|(m, c)| JsonTerm {
                    coeff: c.to_string(),
                    monomial: m.0.iter().map(|(v, e)| (v.to_string(), *e)).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<JsonPoly> for Poly {
    type Error = Error;
    fn try_from(jp: JsonPoly) -> Result<Poly> {
        let mut terms = Vec::new();
        for t in jp.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse { pos: 0, msg: format!("bad coefficient {:?}", t.coeff) })?;
            let mut factors = Vec::new();
            for (name, e) in t.monomial {
                let v = Parser::new(&name).var()?;
                factors.push((v, e));
            }
            terms.push((Monomial::from_pairs(factors), c));
        }
        Ok(Poly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(Poly::x(1) + Poly::x(2), p("x1 + x2"));
        assert_eq!(
            (Poly::x(1) + Poly::y(1)) * (Poly::x(1) + Poly::y(2)),
            p("x1^2 + x1*y1 + x1*y2 + y1*y2")
        );
        assert_eq!((Poly::c(1, 1) + Poly::y(1)) * Poly::one(), p("c[1,1] + y1"));
        assert!((p("x1 - x1")).is_zero());
    }

    #[test]
    fn folding_rules() {
        assert!(Poly::c(0, 3).is_one());
        assert!(Poly::c(3, 2).is_zero());
        assert!(Poly::d(-1, 2).is_zero());
        assert!(Poly::h(0, -4).is_one());
        assert!(Poly::h(-1, 2).is_zero());
        assert_eq!(Poly::t(3, 1), p("t[1,3]"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x1^2 - x2^2").exact_divide(&p("x1 - x2")).unwrap(), p("x1 + x2"));
        assert!(p("x1 - x2").exact_divide(&p("x1 - x2")).unwrap().is_one());
        assert_eq!(p("x1*x2").exact_divide(&p("x1 - x2")), Err(Error::NotDivisible));
        assert_eq!(p("x1").exact_divide(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn substitution() {
        let mut a = HashMap::new();
        a.insert(Var::pair(Family::C, 2, 2), p("x1*x2 + q1"));
        assert_eq!(p("c[2,2]").substitute(&a), p("x1*x2 + q1"));

        let mut a = HashMap::new();
        a.insert(Var::pair(Family::D, 1, 1), p("-c[1,1]"));
        assert!(p("c[1,1] + d[1,1]").substitute(&a).is_zero());

        let mut a = HashMap::new();
        a.insert(Var::pair(Family::G, 1, 0), Poly::x(1));
        a.insert(Var::pair(Family::G, 2, 0), Poly::x(2));
        a.insert(Var::pair(Family::G, 1, 1), Poly::param(Family::Q, 1));
        assert_eq!(p("g[1,0]*g[2,0] + g[1,1]").substitute(&a), p("x1*x2 + q1"));

        // simultaneous, not sequential
        let mut a = HashMap::new();
        a.insert(Var::x(1), Poly::x(2));
        a.insert(Var::x(2), Poly::x(1));
        assert_eq!(p("x1^2*x2").substitute(&a), p("x1*x2^2"));
    }

    #[test]
    fn determinant_examples() {
        let t = Poly::z(99);
        let m = vec![
            vec![&Poly::x(1) + &t, Poly::param(Family::Q, 1)],
            vec![Poly::constant(-1), &Poly::x(2) + &t],
        ];
        assert_eq!(det(&m).unwrap(), p("z99^2 + x1*z99 + x2*z99 + x1*x2 + q1"));
        assert!(det(&[]).unwrap().is_one());
        let a = p("x1 + c[1,1]");
        let b = p("y2");
        assert!(det(&[vec![a.clone(), b.clone()], vec![a, b]]).unwrap().is_zero());
        assert_eq!(det(&[vec![Poly::x(1)], vec![]]), Err(Error::NotSquare));
    }

    #[test]
    fn hessenberg_matches_laplace() {
        let m: Vec<Vec<Poly>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| {
                        if j + 1 < i {
                            Poly::zero()
                        } else {
                            &Poly::x(1 + (i + 2 * j) % 3) + &Poly::constant(i as i64 - j as i64)
                        }
                    })
                    .collect()
            })
            .collect();
        assert!(is_upper_hessenberg(&m));
        assert_eq!(det_hessenberg(&m), det_laplace(&m));
    }

    #[test]
    fn laplace_matches_bareiss() {
        let m: Vec<Vec<Poly>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| {
                        let v = Poly::x(1 + (i * 5 + j) % 4);
                        &v * &Poly::constant((i as i64 - j as i64) * 3 + 1) + Poly::constant(i as i64)
                    })
                    .collect()
            })
            .collect();
        assert_eq!(det_laplace(&m), det_bareiss(&m).unwrap());
    }

    #[test]
    fn coefficient_extraction() {
        let f = p("t[1,2]*x1^2 + x1*x2");
        let m = Monomial::from_exponents(Family::X, &[2]);
        assert_eq!(f.coefficient_of(&m, &[Family::X]), p("t[1,2]"));
        let st = Monomial::from_exponents(Family::X, &[2, 1]);
        assert!(p("x1^2*x2").coefficient_of(&st, &[Family::X]).is_one());
        assert_eq!(
            p("c[1,1] + y1").coefficient_of(&Monomial::one(), &[Family::Y]),
            p("c[1,1]")
        );
    }

    #[test]
    fn serialization_format() {
        let f = &Poly::x(1).pow(2) - &Poly::param(Family::Q, 1);
        assert_eq!(f.to_text(), "x1^2 - q1");
        assert_eq!(Poly::zero().to_text(), "0");
        assert_eq!(p("-2*t[1,2] - t[1,3]").to_text(), "-2*t[1,2] - t[1,3]");
        assert_eq!(p("t[1,2] + x1*x2").to_text(), "x1*x2 + t[1,2]");
        assert_eq!(p("h[2,-1] + h[1,0]*h[1,-1]").to_text(), "h[1,-1]*h[1,0] + h[2,-1]");
        assert_eq!(p("qpp3 * qp2 + 7").to_text(), "qp2*qpp3 + 7");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Poly::parse("x1^"), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse("x"), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse("w3"), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse("t[2,1]"), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse("c[0,1]"), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse("x1 x2"), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let f = p("3*c[1,2]*c[1,1] - c[2,2] + x1^4*t[1,3] - 12345678901234567890123");
        let j = f.to_json();
        assert_eq!(Poly::from_json(&j).unwrap(), f);
        assert!(j.starts_with("{\"terms\":["));
    }

    #[test]
    fn grading() {
        assert_eq!(p("g[1,2]").homogeneous_degree(), Some(3));
        assert_eq!(p("c[2,3]*h[3,-5]").homogeneous_degree(), Some(5));
        assert_eq!(p("x1*x2 + t[1,2]").homogeneous_degree(), Some(2));
        assert_eq!(p("x1 + t[1,2]").homogeneous_degree(), None);
    }
}
