//! Quotient rings by deformed elementary ideals, normal forms on the
//! sub-staircase monomials, the residue pairing, and the multiparameter
//! Schubert basis.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::check::Check;
use crate::combinat::{Composition, Permutation};
use crate::error::{Error, Result};
use crate::poly::{Family, Monomial, Poly, Var};
use crate::quantum::QuantumAlphabet;
use crate::schubert::{classical_schubert, quantum_schubert};
use crate::schur::{complete, elementary, x_alphabet};
use crate::universal::SecondForm;

/// Which deformation of the elementary symmetric functions generates the ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealKind {
    /// Undeformed `e_m(X_n)`.
    Classical,
    /// `e_m(t | X_n)`, parameters `t_{ij}`.
    Multiparameter,
    /// `⬜_m(n)` with `g_i[0] = x_i`, parameters `g_i[j]`, `j >= 1`.
    Universal,
}

impl IdealKind {
    pub fn params(self) -> &'static [Family] {
        match self {
            IdealKind::Classical => &[],
            IdealKind::Multiparameter => &[Family::T],
            IdealKind::Universal => &[Family::G],
        }
    }
}

/// `e_m(t | X_n)`: sum over sets of `l` disjoint pairs `i < j` of
/// `e_{m-2l}` of the remaining variables times `Π t_{ij}`.
pub fn deformed_elementary(m: usize, n: usize) -> Poly {
    let mut out = Poly::zero();
    let mut used = vec![false; n + 1];
    matchings(1, n, m / 2, &mut used, Poly::one(), &mut |used, weight, l| {
        let rest: Vec<Var> = (1..=n).filter(|&a| !used[a]).map(Var::x).collect();
        let e = elementary(m as i64 - 2 * l as i64, &rest);
        if !e.is_zero() {
            out += &e * weight;
        }
    });
    out
}

// Enumerates matchings whose smaller endpoints are increasing; each set of
// pairs is visited once.
fn matchings(
    start: usize,
    n: usize,
    max_pairs: usize,
    used: &mut Vec<bool>,
    weight: Poly,
    visit: &mut dyn FnMut(&[bool], &Poly, usize),
) {
    fn go(
        start: usize,
        n: usize,
        left: usize,
        l: usize,
        used: &mut Vec<bool>,
        weight: &Poly,
        visit: &mut dyn FnMut(&[bool], &Poly, usize),
    ) {
        visit(used, weight, l);
        if left == 0 {
            return;
        }
        for i in start..=n {
            if used[i] {
                continue;
            }
            for j in i + 1..=n {
                if used[j] {
                    continue;
                }
                used[i] = true;
                used[j] = true;
                let w = weight * &Poly::t(i as i32, j as i32);
                go(i + 1, n, left - 1, l + 1, used, &w, visit);
                used[i] = false;
                used[j] = false;
            }
        }
    }
    go(start, n, max_pairs, 0, used, &weight, visit);
}

/// Generators of an ideal in `Z[params][x_1..x_n]` with a monic Gröbner basis.
#[derive(Debug, Clone)]
pub struct IdealPresentation {
    n: usize,
    kind: IdealKind,
    generators: Vec<Poly>,
    // basis[k-1] = Σ_{j>=1} (-1)^{j+1} E_j h_{n-k+1-j}(X_k), leading term x_k^{n-k+1}
    basis: Vec<Poly>,
    // tails[k-1] = x_k^{n-k+1} - basis[k-1], split by x-monomial
    tails: Vec<Vec<(Vec<u32>, Poly)>>,
}

impl IdealPresentation {
    pub fn new(kind: IdealKind, n: usize) -> Result<IdealPresentation> {
        let generators: Vec<Poly> = match kind {
            IdealKind::Classical => (1..=n).map(|m| elementary(m as i64, &x_alphabet(n))).collect(),
            IdealKind::Multiparameter => (1..=n).map(|m| deformed_elementary(m, n)).collect(),
            IdealKind::Universal => {
                let sf = SecondForm::new(n);
                (1..=n)
                    .map(|m| {
                        sf.get(m as i64, n).substitute_with(|v| {
                            (v.family == Family::G && v.j == 0).then(|| Poly::x(v.i as usize))
                        })
                    })
                    .collect()
            }
        };
        IdealPresentation::from_generators(kind, n, generators)
    }

    /// Builds the presentation from explicit generators `E_1..E_n`, which
    /// must reduce to `e_m(X_n)` when all parameters vanish.
    pub fn from_generators(kind: IdealKind, n: usize, generators: Vec<Poly>) -> Result<IdealPresentation> {
        if generators.len() != n {
            return Err(Error::Usage(format!("expected {n} generators, got {}", generators.len())));
        }
        let mut basis = Vec::with_capacity(n);
        let mut tails = Vec::with_capacity(n);
        for k in 1..=n {
            let m = n - k + 1;
            let g: Poly = transform_row(k, n)
                .into_iter()
                .zip(&generators)
                .map(|(c, e)| &c * e)
                .sum();
            let lead = Poly::x(k).pow(m as u32);
            let tail = &lead - &g;
            if tail.collect_in(&[Family::X]).iter().any(|(mono, _)| !below(mono, n, k, m)) {
                return Err(Error::RankDeficiency(format!(
                    "generator combination {k} does not lead with x{k}^{m}"
                )));
            }
            tails.push(
                tail.collect_in(&[Family::X])
                    .into_iter()
                    .map(|(mono, c)| (x_exponents(&mono, n), c))
                    .collect(),
            );
            basis.push(g);
        }
        let ideal = IdealPresentation { n, kind, generators, basis, tails };
        for (j, e) in ideal.generators.iter().enumerate() {
            let mut table = NormalFormTable::empty(&ideal);
            if !table.reduce(e).is_zero() {
                return Err(Error::RankDeficiency(format!("generator {} is not in the span of the basis", j + 1)));
            }
        }
        Ok(ideal)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn groebner_basis(&self) -> &[Poly] {
        &self.basis
    }
}

// Coefficients expressing basis element k in the generators:
// (-1)^{j+1} h_{n-k+1-j}(X_k) for j = 1..n.
fn transform_row(k: usize, n: usize) -> Vec<Poly> {
    let m = (n - k + 1) as i64;
    let xs = x_alphabet(k);
    (1..=n as i64)
        .map(|j| {
            let h = complete(m - j, &xs);
            if j % 2 == 1 {
                h
            } else {
                -h
            }
        })
        .collect()
}

// Whether `mono` is strictly below `x_k^m` in graded lex with x_n > … > x_1.
fn below(mono: &Monomial, n: usize, k: usize, m: usize) -> bool {
    let e = x_exponents(mono, n);
    let deg: u32 = e.iter().sum();
    if deg as usize != m {
        return (deg as usize) < m;
    }
    let mut lead = vec![0u32; n];
    lead[k - 1] = m as u32;
    for a in (0..n).rev() {
        if e[a] != lead[a] {
            return e[a] < lead[a];
        }
    }
    false
}

fn x_exponents(mono: &Monomial, n: usize) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for (v, p) in mono.factors() {
        if v.family == Family::X && v.i >= 1 && (v.i as usize) <= n {
            e[v.i as usize - 1] = *p;
        }
    }
    e
}

fn x_monomial(e: &[u32]) -> Monomial {
    Monomial::from_exponents(Family::X, e)
}

fn is_standard(e: &[u32], n: usize) -> bool {
    e.iter().enumerate().all(|(k, &p)| (p as usize) < n - k)
}

/// Normal forms of `x`-monomials modulo an ideal, memoized.
#[derive(Debug, Clone)]
pub struct NormalFormTable {
    ideal: IdealPresentation,
    memo: HashMap<Vec<u32>, Poly>,
}

impl NormalFormTable {
    fn empty(ideal: &IdealPresentation) -> NormalFormTable {
        NormalFormTable { ideal: ideal.clone(), memo: HashMap::new() }
    }

    /// Empty table; normal forms are memoized as they are requested.
    pub fn new(ideal: &IdealPresentation) -> NormalFormTable {
        NormalFormTable::empty(ideal)
    }

    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }

    fn monomial(&mut self, e: &[u32]) -> Poly {
        if let Some(p) = self.memo.get(e) {
            return p.clone();
        }
        let n = self.ideal.n;
        let result = if is_standard(e, n) {
            Poly::term(1, x_monomial(e))
        } else {
            let k = (0..n).find(|&k| e[k] as usize >= n - k).expect("not standard");
            let mut base = e.to_vec();
            base[k] -= (n - k) as u32;
            let tail = self.ideal.tails[k].clone();
            let mut acc = Poly::zero();
            for (b, c) in &tail {
                let next: Vec<u32> = base.iter().zip(b).map(|(x, y)| x + y).collect();
                let nf = self.monomial(&next);
                acc += c * &nf;
            }
            acc
        };
        self.memo.insert(e.to_vec(), result.clone());
        result
    }

    /// Representative of `f` supported on `{x^I : I ⊆ δ_n}`.
    pub fn reduce(&mut self, f: &Poly) -> Poly {
        let n = self.ideal.n;
        let mut out = Poly::zero();
        for (mono, c) in f.collect_in(&[Family::X]) {
            let nf = self.monomial(&x_exponents(&mono, n));
            out += &c * &nf;
        }
        out
    }

    /// Coefficient of `x^{δ_n}` in the normal form of `f`.
    pub fn residue(&mut self, f: &Poly) -> Poly {
        let n = self.ideal.n;
        let delta = x_monomial(Composition::staircase(n).entries());
        self.reduce(f).coefficient_of(&delta, &[Family::X])
    }

    pub fn pairing(&mut self, f: &Poly, g: &Poly) -> Poly {
        self.residue(&(f * g))
    }

    /// Normal form together with coefficients `C_j` such that
    /// `f - NF(f) = Σ_j C_j E_j`.
    pub fn reduce_with_certificate(&mut self, f: &Poly) -> (Poly, Vec<Poly>) {
        let n = self.ideal.n;
        let mut quotients = vec![Poly::zero(); n];
        let mut rem = f.clone();
        let mut normal = Poly::zero();
        loop {
            // pick the largest non-standard x-monomial, if any
            let mut pending: Option<(Vec<u32>, Poly)> = None;
            for (mono, c) in rem.collect_in(&[Family::X]) {
                let e = x_exponents(&mono, n);
                if is_standard(&e, n) {
                    normal += &c * &Poly::term(1, mono);
                } else if pending.is_none() {
                    pending = Some((e, c));
                }
            }
            let Some((e, c)) = pending else { break };
            rem = &rem - &(&c * &Poly::term(1, x_monomial(&e)));
            rem = rem
                .collect_in(&[Family::X])
                .into_iter()
                .filter(|(mono, _)| !is_standard(&x_exponents(mono, n), n))
                .map(|(mono, c)| &c * &Poly::term(1, mono))
                .sum();
            let k = (0..n).find(|&k| e[k] as usize >= n - k).expect("not standard");
            let mut base = e.clone();
            base[k] -= (n - k) as u32;
            let q = &c * &Poly::term(1, x_monomial(&base));
            quotients[k] += &q;
            let tail: Poly = self.ideal.tails[k].iter().map(|(b, tc)| tc * &Poly::term(1, x_monomial(b))).sum();
            rem += &q * &tail;
        }
        let certificate: Vec<Poly> = (1..=n)
            .map(|j| {
                (1..=n)
                    .map(|k| &quotients[k - 1] * &transform_row(k, n)[j - 1])
                    .sum()
            })
            .collect();
        (normal, certificate)
    }
}

/// Convenience wrapper: normal form of `f` modulo the ideal.
pub fn normal_form(f: &Poly, ideal: &IdealPresentation) -> Poly {
    NormalFormTable::empty(ideal).reduce(f)
}

/// Convenience wrapper: residue of `f` modulo the ideal.
pub fn residue(f: &Poly, ideal: &IdealPresentation) -> Poly {
    NormalFormTable::empty(ideal).residue(f)
}

/// Checks `⟨w(x^I)⟩ = (-1)^{l(w)} w(⟨x^I⟩)` for all `w ∈ S_n` and all
/// monomials in `n` variables of degree at most `max_degree`.
pub fn equivariance_check(n: usize, max_degree: u32) -> Result<Check> {
    symmetry_check_with(n, max_degree, true)
}

pub(crate) fn symmetry_check_with(n: usize, max_degree: u32, signed: bool) -> Result<Check> {
    let ideal = IdealPresentation::new(IdealKind::Multiparameter, n)?;
    let mut table = NormalFormTable::new(&ideal);
    let monomials = all_exponents(n, max_degree);
    for w in Permutation::all(n) {
        let sign: BigInt = if signed && w.length() % 2 == 1 { (-1).into() } else { 1.into() };
        for e in &monomials {
            let mono = Poly::term(1, x_monomial(e));
            let lhs = table.residue(&act(&w, &mono));
            let rhs = act(&w, &table.residue(&mono)).scale(&sign);
            let c = Check::compare(&lhs, &rhs);
            if !c.pass {
                return Ok(c);
            }
        }
    }
    Ok(Check::ok())
}

fn all_exponents(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max_degree - used).map(move |p| {
                    let mut w = v.clone();
                    w.push(p);
                    w
                })
            })
            .collect();
    }
    out
}

/// `x_i ↦ x_{w(i)}`, `t_{ij} ↦ t_{w(i) w(j)}` with sorted indices.
pub fn act(w: &Permutation, f: &Poly) -> Poly {
    f.substitute_with(|v| match v.family {
        Family::X => Some(Poly::x(w.at(v.i as usize))),
        Family::T => Some(Poly::t(w.at(v.i as usize) as i32, w.at(v.j as usize) as i32)),
        _ => None,
    })
}


/// Parameter monomials of weighted degree `weight` for the ideal's deformation
/// variables.
fn param_monomials(kind: IdealKind, n: usize, weight: i64) -> Vec<Monomial> {
    let vars: Vec<Var> = match kind {
        IdealKind::Classical => Vec::new(),
        IdealKind::Multiparameter => (1..=n as i32)
            .flat_map(|i| (i + 1..=n as i32).map(move |j| Var::pair(Family::T, i, j)))
            .collect(),
        IdealKind::Universal => (1..=n as i32)
            .flat_map(|i| (1..=n as i32 - i).map(move |j| Var::pair(Family::G, i, j)))
            .collect(),
    };
    let mut out = Vec::new();
    fn go(vars: &[Var], left: i64, acc: Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_pairs(acc));
            return;
        }
        let Some((v, rest)) = vars.split_first() else { return };
        let w = v.degree();
        let mut k = 0;
        while k as i64 * w <= left {
            let mut next = acc.clone();
            if k > 0 {
                next.push((*v, k));
            }
            go(rest, left - k as i64 * w, next, out);
            k += 1;
        }
    }
    if weight > 0 {
        go(&vars, weight, Vec::new(), &mut out);
    }
    out
}

// Sparse linear system over Q kept in reduced row echelon form.
#[derive(Default, Clone)]
struct Echelon {
    pivots: Vec<(usize, BTreeMap<usize, BigRational>, BigRational)>,
}

impl Echelon {
    // Returns false when the new equation is inconsistent with the previous ones.
    fn push(&mut self, mut row: BTreeMap<usize, BigRational>, mut rhs: BigRational) -> bool {
        for (p, prow, prhs) in &self.pivots {
            if let Some(c) = row.get(p).cloned() {
                for (k, v) in prow {
                    let e = row.entry(*k).or_insert_with(BigRational::zero);
                    *e -= &c * v;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
                rhs -= &c * prhs;
            }
        }
        let Some((&p, lead)) = row.iter().next() else {
            return rhs.is_zero();
        };
        let lead = lead.clone();
        for v in row.values_mut() {
            *v /= &lead;
        }
        rhs /= &lead;
        for (_, prow, prhs) in &mut self.pivots {
            if let Some(c) = prow.get(&p).cloned() {
                for (k, v) in &row {
                    let e = prow.entry(*k).or_insert_with(BigRational::zero);
                    *e -= &c * v;
                    if e.is_zero() {
                        prow.remove(k);
                    }
                }
                *prhs -= &c * &rhs;
            }
        }
        self.pivots.push((p, row, rhs));
        true
    }

    // Solution with every free variable set to zero.
    fn solution(&self, ncols: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); ncols];
        for (p, _, rhs) in &self.pivots {
            x[*p] = rhs.clone();
        }
        x
    }
}

// Adds one equation per monomial: Σ_c images[c] · u_c = target.
fn push_equations(sys: &mut Echelon, images: &[(usize, Poly)], target: &Poly) -> bool {
    let mut rows: HashMap<Monomial, (BTreeMap<usize, BigRational>, BigRational)> = HashMap::new();
    for (c, img) in images {
        for (m, k) in img.terms() {
            let e = rows.entry(m.clone()).or_default();
            *e.0.entry(*c).or_insert_with(BigRational::zero) += BigRational::from_integer(k.clone());
        }
    }
    for (m, k) in target.terms() {
        rows.entry(m.clone()).or_default().1 += BigRational::from_integer(k.clone());
    }
    let mut keys: Vec<Monomial> = rows.keys().cloned().collect();
    keys.sort_by_key(|m| m.to_string());
    keys.into_iter().all(|m| {
        let (mut row, rhs) = rows.remove(&m).expect("key");
        row.retain(|_, v| !v.is_zero());
        sys.push(row, rhs)
    })
}

/// Specialization of the deformation parameters to the quantum ones:
/// `t_{i,i+1} ↦ q_i` (other `t` to zero), or `g_i[1] ↦ q_i` (higher `g` to zero).
pub fn quantum_specialization(f: &Poly) -> Poly {
    f.substitute_with(|v| match v.family {
        Family::T if v.j == v.i + 1 => Some(Poly::var(Var::single(Family::Q, v.i))),
        Family::T => Some(Poly::zero()),
        Family::G if v.j == 1 => Some(Poly::var(Var::single(Family::Q, v.i))),
        Family::G if v.j >= 2 => Some(Poly::zero()),
        _ => None,
    })
}

fn param_weight_part(f: &Poly, fams: &[Family], weight: i64) -> Poly {
    Poly::from_terms(
        f.terms()
            .iter()
            .filter(|(m, _)| m.split(fams).0.degree() == weight)
            .cloned(),
    )
}

/// Orthogonal Schubert basis of the quotient ring.
///
/// Solves, one parameter weight at a time, for `𝔖_w = 𝔖_w^{classical} + Σ a_I x^I`
/// with `|I| < l(w)` subject to `⟨𝔖_u, 𝔖_v⟩ = δ_{v, w0 u}`, the quantum
/// specialization `𝔖_w ↦ 𝔖_w^q`, and (over the multiparameter ideal, in
/// `B_n`) `s_i 𝔖_w = 𝔖_w` whenever `w(i) < w(i+1)`. The symmetry conditions
/// are imposed in order and skipped when they contradict the earlier rows.
/// Remaining freedom is fixed by setting free coordinates to zero.
pub fn gram_schmidt_schubert(ideal: &IdealPresentation) -> Result<HashMap<Permutation, Poly>> {
    let mut table = NormalFormTable::new(ideal);
    gram_schmidt_with(&mut table)
}

pub fn gram_schmidt_with(table: &mut NormalFormTable) -> Result<HashMap<Permutation, Poly>> {
    let ideal = table.ideal().clone();
    let (n, kind) = (ideal.n(), ideal.kind());
    let top = n * n.saturating_sub(1) / 2;
    let perms = Permutation::all(n);
    let w0 = Permutation::longest(n);
    let classical: Vec<Poly> = perms.iter().map(|w| classical_schubert(w, false)).collect();
    let mut current = classical.clone();
    if kind == IdealKind::Classical {
        return Ok(perms.into_iter().zip(current).collect());
    }
    let mut plain = NormalFormTable::new(&IdealPresentation::new(IdealKind::Classical, n)?);
    let qx = QuantumAlphabet::x(n);
    let quantum: Vec<Poly> = perms.iter().map(|w| quantum_schubert(w, &qx)).collect();
    let fams = [kind.params(), &[Family::Q]].concat();
    let standard = Composition::all_sub_staircase(n);

    for weight in 1..=top as i64 {
        let pmonos = param_monomials(kind, n, weight);
        if pmonos.is_empty() {
            continue;
        }
        // columns: (permutation index, x-exponents, parameter monomial)
        let mut cols: Vec<(usize, Poly, Poly)> = Vec::new();
        for (k, w) in perms.iter().enumerate() {
            let xdeg = w.length() as i64 - weight;
            if xdeg < 0 {
                continue;
            }
            for i in standard.iter().filter(|i| i.size() as i64 == xdeg) {
                let xm = Poly::term(1, x_monomial(i.entries()));
                for p in &pmonos {
                    cols.push((k, xm.clone(), Poly::term(1, p.clone())));
                }
            }
        }
        if cols.is_empty() {
            continue;
        }
        let mut sys = Echelon::default();
        let mut consistent = true;
        for (a, u) in perms.iter().enumerate() {
            for (b, v) in perms.iter().enumerate().skip(a) {
                if u.length() as i64 + v.length() as i64 - top as i64 != weight {
                    continue;
                }
                let mut images = Vec::new();
                for (c, (k, xm, pm)) in cols.iter().enumerate() {
                    if *k == a {
                        images.push((c, pm * &plain.pairing(xm, &classical[b])));
                    }
                    if *k == b {
                        images.push((c, pm * &plain.pairing(xm, &classical[a])));
                    }
                }
                let delta = if w0.compose(u) == *v { Poly::one() } else { Poly::zero() };
                let target = &delta - &table.pairing(&current[a], &current[b]);
                consistent &= push_equations(&mut sys, &images, &target);
            }
        }
        for (a, w) in perms.iter().enumerate() {
            let images: Vec<(usize, Poly)> = cols
                .iter()
                .enumerate()
                .filter(|(_, (k, _, _))| *k == a)
                .map(|(c, (_, xm, pm))| (c, quantum_specialization(&(xm * pm))))
                .collect();
            let target = param_weight_part(&(&quantum[a] - &quantum_specialization(&current[a])), &fams, weight);
            consistent &= push_equations(&mut sys, &images, &target);
            if kind == IdealKind::Multiparameter {
                for i in 1..n {
                    if w.at(i) > w.at(i + 1) {
                        continue;
                    }
                    let s = Permutation::simple(i, n);
                    let images: Vec<(usize, Poly)> = cols
                        .iter()
                        .enumerate()
                        .filter(|(_, (k, _, _))| *k == a)
                        .map(|(c, (_, xm, pm))| {
                            let m = xm * pm;
                            (c, &table.reduce(&act(&s, &m)) - &m)
                        })
                        .collect();
                    let mut trial = sys.clone();
                    if push_equations(&mut trial, &images, &Poly::zero()) {
                        sys = trial;
                    }
                }
            }
        }
        if !consistent {
            return Err(Error::RankDeficiency(format!(
                "no orthogonal family in weight {weight} for n = {n}"
            )));
        }
        for (c, value) in sys.solution(cols.len()).into_iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            if !value.is_integer() {
                return Err(Error::RankDeficiency(format!(
                    "non-integral coefficient in weight {weight} for n = {n}"
                )));
            }
            let (k, xm, pm) = &cols[c];
            current[*k] += &(xm * pm).scale(&value.to_integer());
        }
    }
    Ok(perms.into_iter().zip(current).collect())
}

/// Outcome of comparing the universal Schubert family with the residue pairing.
#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub n: usize,
    /// Pairs `(u, v, ⟨𝔖_u(g), 𝔖_v(g)⟩)` violating `δ_{v, w0 u}`.
    pub orthogonality: Vec<(Permutation, Permutation, Poly)>,
    /// Permutations where the Gram–Schmidt family differs from `𝔖_w(g)`,
    /// or the reason no such family was produced.
    pub gram_schmidt: std::result::Result<Vec<Permutation>, String>,
    /// `(I, J, ⟨⬜_I, ⬜_J⟩_ℛ, ⟨e_I, e_J⟩)` wherever the two differ.
    pub pairing: Vec<(Composition, Composition, Poly, Poly)>,
}

impl ConjectureReport {
    pub fn gram_schmidt_holds(&self) -> bool {
        self.orthogonality.is_empty() && matches!(&self.gram_schmidt, Ok(v) if v.is_empty())
    }

    pub fn pairing_holds(&self) -> bool {
        self.pairing.is_empty()
    }
}

fn g0_to_x(f: &Poly) -> Poly {
    f.substitute_with(|v| (v.family == Family::G && v.j == 0).then(|| Poly::x(v.i as usize)))
}

fn drop_g(f: &Poly) -> Poly {
    f.substitute_with(|v| (v.family == Family::G && v.j > 0).then(Poly::zero))
}

type Mismatches = Vec<(Permutation, Permutation, Poly)>;

fn universal_setup(n: usize) -> Result<IdealPresentation> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedRank { name: "universal quotient checks".into(), n, min: 1, max: 4 });
    }
    IdealPresentation::new(IdealKind::Universal, n)
}

/// Pairs violating `⟨𝔖_u(g), 𝔖_v(g)⟩ = δ_{v, w0 u}`, and the comparison of
/// `𝔖_w(g)` with the Gram–Schmidt family of the universal quotient.
#[allow(clippy::type_complexity)]
pub fn orthogonality_conjecture(n: usize) -> Result<(Mismatches, std::result::Result<Vec<Permutation>, String>)> {
    let ideal = universal_setup(n)?;
    let mut table = NormalFormTable::new(&ideal);
    let perms = Permutation::all(n);
    let w0 = Permutation::longest(n);
    let family: HashMap<Permutation, Poly> = perms
        .iter()
        .map(|w| (w.clone(), table.reduce(&g0_to_x(&crate::universal::second_form_schubert(w)))))
        .collect();
    let mut orthogonality = Vec::new();
    for (a, u) in perms.iter().enumerate() {
        for v in &perms[a..] {
            let got = table.pairing(&family[u], &family[v]);
            let want = if w0.compose(u) == *v { Poly::one() } else { Poly::zero() };
            if got != want {
                orthogonality.push((u.clone(), v.clone(), got));
            }
        }
    }
    let gram_schmidt = match gram_schmidt_with(&mut table) {
        Ok(gs) => Ok(perms.iter().filter(|w| table.reduce(&gs[*w]) != family[*w]).cloned().collect()),
        Err(e) => Err(e.to_string()),
    };
    Ok((orthogonality, gram_schmidt))
}

/// Entries `(I, J, ⟨⬜_I, ⬜_J⟩_ℛ, ⟨e_I, e_J⟩)` where the universal pairing
/// differs from the classical one.
pub fn pairing_conjecture(n: usize) -> Result<Vec<(Composition, Composition, Poly, Poly)>> {
    let ideal = universal_setup(n)?;
    let mut table = NormalFormTable::new(&ideal);
    let mut plain = NormalFormTable::new(&IdealPresentation::new(IdealKind::Classical, n)?);
    let sf = SecondForm::new(n);
    let comps = Composition::all_sub_staircase(n);
    let boxes: Vec<Poly> = comps.iter().map(|i| g0_to_x(&sf.product(i))).collect();
    let mut pairing = Vec::new();
    for a in 0..comps.len() {
        for b in a..comps.len() {
            let got = table.pairing(&boxes[a], &boxes[b]);
            let want = plain.pairing(&drop_g(&boxes[a]), &drop_g(&boxes[b]));
            if got != want {
                pairing.push((comps[a].clone(), comps[b].clone(), got, want));
            }
        }
    }
    Ok(pairing)
}

/// Both comparisons for the universal quotient of rank `n ≤ 4`.
pub fn conjecture_checks(n: usize) -> Result<ConjectureReport> {
    let (orthogonality, gram_schmidt) = orthogonality_conjecture(n)?;
    let pairing = pairing_conjecture(n)?;
    Ok(ConjectureReport { n, orthogonality, gram_schmidt, pairing })
}

/// Expansion of `𝔖_u · 𝔖_v` in the basis `family`, read off by peeling
/// leading monomials of the normal form.
pub fn structure_constants(
    u: &Permutation,
    v: &Permutation,
    family: &HashMap<Permutation, Poly>,
    table: &mut NormalFormTable,
) -> Result<HashMap<Permutation, Poly>> {
    let n = table.ideal().n();
    let by_code: HashMap<Vec<u32>, &Permutation> = family.keys().map(|w| (w.code()[..n - 1].to_vec(), w)).collect();
    let mut rem = table.reduce(&(&family[u] * &family[v]));
    let mut out = HashMap::new();
    while !rem.is_zero() {
        // largest x-monomial in graded reverse order on codes
        let lead = rem
            .collect_in(&[Family::X])
            .into_iter()
            .map(|(m, c)| (x_exponents(&m, n), c))
            .max_by(|(a, _), (b, _)| code_order(a, b))
            .expect("nonzero");
        let w = by_code
            .get(&lead.0[..n - 1])
            .ok_or_else(|| Error::RankDeficiency("normal form outside the staircase".into()))?;
        let next = &rem - &(&lead.1 * &family[*w]);
        let stuck = next
            .collect_in(&[Family::X])
            .into_iter()
            .any(|(m, _)| x_exponents(&m, n) == lead.0);
        if stuck || out.contains_key(*w) {
            return Err(Error::RankDeficiency(format!("family is not triangular at {w}")));
        }
        rem = next;
        out.insert((*w).clone(), lead.1);
    }
    Ok(out)
}

// Degree first, then the last differing exponent.
fn code_order(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| {
        for k in (0..a.len()).rev() {
            if a[k] != b[k] {
                return a[k].cmp(&b[k]);
            }
        }
        std::cmp::Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn deformed_generators() {
        assert_eq!(deformed_elementary(1, 3), p("x1 + x2 + x3"));
        assert_eq!(deformed_elementary(2, 2), p("x1*x2 + t[1,2]"));
        assert_eq!(deformed_elementary(3, 3), p("x1*x2*x3 + t[1,2]*x3 + t[1,3]*x2 + t[2,3]*x1"));
        let four = deformed_elementary(4, 4);
        assert_eq!(four.coeff(&Monomial::from_pairs([(Var::pair(Family::T, 1, 2), 1), (Var::pair(Family::T, 3, 4), 1)])), 1.into());
    }

    #[test]
    fn residues_rank_three() {
        let ideal = IdealPresentation::new(IdealKind::Multiparameter, 3).unwrap();
        assert_eq!(normal_form(&p("x1^3"), &ideal), p("2*t[1,2]*x1 + t[1,2]*x2 + t[1,3]*x1 - t[1,3]*x2"));
        assert_eq!(residue(&p("x1^3*x2^2"), &ideal), p("-2*t[1,2] - t[1,3]"));
        assert_eq!(residue(&p("x1^4*x2"), &ideal), p("t[1,2] + 2*t[1,3]"));
        assert!(normal_form(&deformed_elementary(2, 3), &ideal).is_zero());
        assert_eq!(normal_form(&p("x1^2*x2"), &ideal), p("x1^2*x2"));
    }

    #[test]
    fn residue_rank_four() {
        let ideal = IdealPresentation::new(IdealKind::Multiparameter, 4).unwrap();
        assert_eq!(residue(&p("x1^5*x2^3"), &ideal), p("t[1,4] - t[1,3]"));
    }

    #[test]
    fn certificates() {
        for kind in [IdealKind::Multiparameter, IdealKind::Universal, IdealKind::Classical] {
            let ideal = IdealPresentation::new(kind, 3).unwrap();
            let mut table = NormalFormTable::new(&ideal);
            let f = p("x1^4*x2 + 3*x2^3*x3 - x1*x3^4 + x3^2");
            let (nf, cert) = table.reduce_with_certificate(&f);
            assert_eq!(nf, table.reduce(&f));
            let combo: Poly = cert.iter().zip(ideal.generators()).map(|(c, e)| c * e).sum();
            assert_eq!(&f - &nf, combo);
        }
    }

    #[test]
    fn symmetry() {
        assert!(equivariance_check(3, 6).unwrap().pass);
        assert!(!symmetry_check_with(3, 6, false).unwrap().pass);
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn gram_schmidt_multiparameter_three() {
        let ideal = IdealPresentation::new(IdealKind::Multiparameter, 3).unwrap();
        let family = gram_schmidt_schubert(&ideal).unwrap();
        assert_eq!(family[&perm("231")], p("x1*x2 + t[1,2]"));
        assert_eq!(family[&perm("312")], p("x1^2 - t[1,2] - t[1,3]"));
        assert_eq!(family[&perm("321")], p("x1^2*x2 + t[1,2]*x1 - t[1,3]*x2"));
        assert_eq!(family[&perm("213")], p("x1"));
        let mut table = NormalFormTable::new(&ideal);
        let w0 = Permutation::longest(3);
        for (u, fu) in &family {
            for (v, fv) in &family {
                let expect = if w0.compose(u) == *v { Poly::one() } else { Poly::zero() };
                assert_eq!(table.pairing(fu, fv), expect, "{u} {v}");
            }
        }
    }

    #[test]
    fn classical_ideal_gives_classical_family() {
        let ideal = IdealPresentation::new(IdealKind::Classical, 3).unwrap();
        let family = gram_schmidt_schubert(&ideal).unwrap();
        for (w, f) in &family {
            assert_eq!(*f, classical_schubert(w, false));
        }
    }

    #[test]
    fn products() {
        let ideal = IdealPresentation::new(IdealKind::Multiparameter, 3).unwrap();
        let family = gram_schmidt_schubert(&ideal).unwrap();
        let mut table = NormalFormTable::new(&ideal);
        let s = perm("213");
        let c = structure_constants(&s, &s, &family, &mut table).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&perm("312")], Poly::one());
        assert_eq!(c[&Permutation::identity(3)], p("t[1,2] + t[1,3]"));
        for u in family.keys() {
            for v in family.keys() {
                let c = structure_constants(u, v, &family, &mut table).unwrap();
                let back: Poly = c.iter().map(|(w, k)| k * &family[w]).sum();
                assert_eq!(table.reduce(&back), table.reduce(&(&family[u] * &family[v])));
            }
        }
    }

    #[test]
    fn quantum_specialization_of_generators() {
        let qx = QuantumAlphabet::x(4);
        for m in 1..=4 {
            let e = qx.e(m as i64, 4).unwrap();
            assert_eq!(quantum_specialization(&deformed_elementary(m, 4)), e);
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        let ideal = IdealPresentation::new(IdealKind::Universal, 3).unwrap();
        let mut table = NormalFormTable::new(&ideal);
        let f = p("x1^5*x2 - 2*x3^4 + x1*x2*x3^2");
        let once = table.reduce(&f);
        assert_eq!(table.reduce(&once), once);
    }

    #[test]
    fn universal_family_checks() {
        let two = conjecture_checks(2).unwrap();
        assert!(two.gram_schmidt_holds() && two.pairing_holds());
        let three = conjecture_checks(3).unwrap();
        let w0 = Permutation::longest(3);
        assert!(three.orthogonality.iter().any(|(u, v, f)| *u == w0 && *v == w0 && *f == p("g[1,2]")));
        assert_eq!(three.pairing.len(), 1);
        let (i, j, got, want) = &three.pairing[0];
        assert_eq!((i.entries(), j.entries()), (&[2, 1][..], &[2, 1][..]));
        assert_eq!((got, want), (&p("g[1,2]"), &Poly::zero()));
    }
}
