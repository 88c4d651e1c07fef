//! Identity registry, golden-file reproduction and the entry points used by
//! the command-line tool.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::check::Check;
use crate::combinat::{Composition, Partition, Permutation};
use crate::error::{Error, Result};
use crate::poly::{Family, Poly};
use crate::quantum::{inversion_check, super_eh, truncation_agrees, HVariant, QuantumAlphabet, SuperKind};
use crate::residue::{
    deformed_elementary, equivariance_check, gram_schmidt_schubert, pairing_conjecture, orthogonality_conjecture,
    IdealKind, IdealPresentation, NormalFormTable,
};
use crate::schubert::{classical_schubert, double_quantum_schubert, quantum_schubert};
use crate::schur::{cauchy_check, ninth_e_minor, ninth_giambelli, ninth_h_minor, ninth_variation, schur, x_alphabet, NinthForm, SchurMethod};
use crate::universal::{
    cauchy_universal, grassmannian_determinant_with_flag, grassmannian_flag, grassmannian_forms_check,
    pair_determinant_check, second_form_double, second_form_schubert, specialize_flagged, universal_double,
    universal_double_poly, universal_s_i, universal_single, CauchyForm, ConvolutionRange, SecondForm,
};

pub const GOLDEN_RANK3: &str = include_str!("../golden/multiparameter_rank3.txt");
pub const GOLDEN_RANK4: &str = include_str!("../golden/multiparameter_rank4.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub n: usize,
    pub status: Status,
    /// Canonical text of a nonzero witness when the check fails.
    pub witness: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} n={}", self.name, self.n)?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}

/// Result of a single checker run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub check: Check,
    pub notes: Vec<String>,
}

impl From<Check> for Outcome {
    fn from(check: Check) -> Outcome {
        Outcome { check, notes: Vec::new() }
    }
}

/// One entry of the registry.
#[derive(Clone, Copy)]
pub struct IdentityCase {
    pub name: &'static str,
    pub statement: &'static str,
    /// Symbolic parameter families involved.
    pub params: &'static str,
    pub min_n: usize,
    pub max_n: usize,
    /// Run at `n = 5` when the full suite is asked for it.
    pub cheap: bool,
    run: fn(usize) -> Result<Outcome>,
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase").field("name", &self.name).field("min_n", &self.min_n).field("max_n", &self.max_n).finish()
    }
}

macro_rules! case {
    ($name:expr, $stmt:expr, $params:expr, $min:expr, $max:expr, $cheap:expr, $run:expr) => {
        IdentityCase { name: $name, statement: $stmt, params: $params, min_n: $min, max_n: $max, cheap: $cheap, run: $run }
    };
}

pub fn registry() -> &'static [IdentityCase] {
    static CASES: &[IdentityCase] = &[
        case!("cauchy-classical", "Σ_λ s_λ(X_n) s_λ̂'(Y_m) = Π(x_i + y_j) for m ≤ 3", "", 1, 4, true, run_cauchy_classical),
        case!("schur-methods", "five determinantal forms of s_λ agree for λ ⊆ (3,3,3)", "", 1, 4, true, run_schur_methods),
        case!("quantum-inversion", "e^q_k(X_r) = det(h^q_{1-i+j}(X_{r+1-j}))", "q", 1, 5, true, run_quantum_inversion),
        case!("quantum-truncation", "strict and truncated h^q_k(X_r) agree below the boundary", "q", 2, 5, true, run_quantum_truncation),
        case!("quantum-duality", "h^{q,q'}_m(X_k - Y_l) = e^{q',q}_m(Y_l - X_k)", "q, q'", 1, 4, true, run_quantum_duality),
        case!("pair-determinant", "det(e_{n-2i+j}(i | n-i)) = Σ_I s_I(c) d_{δ-I}", "c, d", 2, 5, true, run_pair_determinant),
        case!("schubert-monomial-cauchy", "Σ_w 𝔖_w(x) 𝔖_{ww0}(d) = Σ_I x^I d_{δ-I}", "d", 2, 5, true, run_mid_form),
        case!("semi-universal-cauchy", "Σ_w 𝔖^q_w(X) 𝔖_{ww0}(d) = det(h^q_{n-2i+j}(X_i | n-i))", "q, d", 2, 4, false, |n| cauchy(n, CauchyForm::SemiUniversal)),
        case!("quantum-cauchy", "Σ_w 𝔖^q_w(X) 𝔖^{q'}_{ww0}(Y) = det(h^{q,q'}_{n-2i+j}(X_i - Y_{n-i}))", "q, q'", 2, 4, false, |n| cauchy(n, CauchyForm::QuantumDouble)),
        case!("quantum-three-alphabet", "Cauchy identities through an intermediate alphabet Z", "q, q', q''", 2, 3, false, |n| cauchy(n, CauchyForm::QuantumThreeAlphabet)),
        case!("universal-to-quantum", "c_i(k) → e^q_i(X_k), d_j(l) → e^{q'}_j(Y_l) maps 𝔖_w(c,d) to 𝔖^{q,q'}_w", "c, d, q, q'", 2, 4, false, run_universal_to_quantum),
        case!("quantum-diagonal-vanishing", "𝔖^{q,q}_w(X_n, -X_n) = 0 for w ≠ id", "q", 2, 4, false, run_diagonal_vanishing),
        case!("cauchy-universal", "𝔖_{w0}(c, d) = Σ_I 𝔖_I(c) d_{δ-I}", "c, d", 2, 5, true, |n| cauchy(n, CauchyForm::UniversalTop)),
        case!("three-alphabet-cauchy", "Σ_u 𝔖_u(c, b) 𝔖_{uw^{-1}}(d, b̃) = 𝔖_w(c, d), length-additive u", "b, c, d", 2, 4, false, run_three_alphabet),
        case!("fulton-vanishing", "𝔖_w(b, b̃) = 0 for w ≠ id", "b", 2, 4, false, |n| cauchy(n, CauchyForm::ThreeAlphabetVanishing)),
        case!("second-form-cauchy", "Σ_w 𝔖_w(g) 𝔖_{ww0}(Y) = 𝔖_{w0}(g, Y) and the Z version", "g", 2, 4, false, |n| cauchy(n, CauchyForm::SecondFormDouble)),
        case!("second-form-expansion", "𝔖_{w0}(g, Y) = Σ_I ⬜_I(g) y^{δ-I}", "g", 2, 4, true, |n| cauchy(n, CauchyForm::SecondFormExpansion)),
        case!("second-form-specialization", "g-specializations recover classical and quantum Schubert polynomials", "g, q", 2, 4, false, run_second_form_specialization),
        case!("gram-schmidt-universal", "𝔖_w(g) is the orthogonal Schubert family of the universal quotient", "g", 2, 3, false, run_gram_schmidt_universal),
        case!("pairing-universal", "⟨⬜_I(g), ⬜_J(g)⟩ = ⟨e_I(x), e_J(x)⟩ for I, J ⊆ δ_n", "g", 2, 4, false, run_pairing_universal),
        case!("residue-equivariance", "⟨w(x^I)⟩ = (-1)^{l(w)} w⟨x^I⟩ on the multiparameter quotient", "t", 2, 3, false, run_equivariance),
        case!("multiparameter-rank3", "multiparameter Schubert polynomials and residues for S_3 (golden)", "t", 3, 3, false, |_| golden_check(GOLDEN_RANK3, 3)),
        case!("multiparameter-rank4", "multiparameter residues and 𝔖^t_{4321} for S_4 (golden)", "t", 4, 4, false, |_| golden_check(GOLDEN_RANK4, 4)),
        case!("grassmannian-e-form", "𝔖_w(c) = det(c_{λ'_i-i+j}(r-1+j)) for Grassmannian w", "c", 2, 5, true, run_grassmannian_e_form),
        case!("grassmannian-determinant", "Grassmannian determinant against 𝔖_w(c, y) and 𝔖_w(c)", "c, q'", 2, 5, true, run_grassmannian_determinant),
        case!("ninth-variation", "h-, e- and Giambelli forms of s_{λ/μ}(h) agree for |λ| ≤ n + 1", "h", 1, 5, true, run_ninth_variation),
    ];
    CASES
}

pub fn find_case(name: &str) -> Result<&'static IdentityCase> {
    registry().iter().find(|c| c.name == name).ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}

pub fn verify(name: &str, n: usize) -> Result<VerificationReport> {
    let case = find_case(name)?;
    if n < case.min_n || n > case.max_n {
        return Err(Error::UnsupportedRank { name: name.to_string(), n, min: case.min_n, max: case.max_n });
    }
    Ok(run_case(case, n))
}

fn run_case(case: &IdentityCase, n: usize) -> VerificationReport {
    let start = Instant::now();
    let outcome = (case.run)(n);
    let elapsed = start.elapsed();
    let (check, notes) = match outcome {
        Ok(o) => (o.check, o.notes),
        Err(e) => (Check::fail(Poly::one()), vec![format!("error: {e}")]),
    };
    let witness = (!check.pass).then(|| {
        if check.witness.is_zero() { Poly::one() } else { check.witness }.to_text()
    });
    VerificationReport {
        name: case.name.to_string(),
        n,
        status: if check.pass { Status::Pass } else { Status::Fail },
        witness,
        elapsed,
        notes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.reports {
            writeln!(f, "{r}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} cases, {} passed, {} failed", self.reports.len(), self.reports.len() - failed, failed)
    }
}

/// `(case, n)` pairs run by a suite level. Quick covers `n ≤ 3`, full covers
/// `n ≤ 4`; ranks above 4 up to `max_n` are added for the cheap cases only.
pub fn suite_plan(level: Level, max_n: usize) -> Vec<(&'static IdentityCase, usize)> {
    let top = match level {
        Level::Quick => 3,
        Level::Full => 4,
    };
    let mut plan = Vec::new();
    for case in registry() {
        let hi = case.max_n.min(if case.cheap && level == Level::Full { top.max(max_n) } else { top });
        for n in case.min_n..=hi {
            plan.push((case, n));
        }
    }
    plan
}

/// Runs every planned case; cases run in parallel, the report keeps plan order.
pub fn run_suite(level: Level, max_n: usize) -> SuiteReport {
    let plan = suite_plan(level, max_n);
    let reports = plan.par_iter().map(|(case, n)| run_case(case, *n)).collect();
    SuiteReport { reports }
}

// ---- checkers

fn cauchy(n: usize, form: CauchyForm) -> Result<Outcome> {
    Ok(cauchy_universal(n, &form).into())
}

fn run_cauchy_classical(n: usize) -> Result<Outcome> {
    Ok(Check::all((1..=3).map(|m| cauchy_check(n, m))).into())
}

fn run_schur_methods(n: usize) -> Result<Outcome> {
    let xs = x_alphabet(n);
    let mut checks = Vec::new();
    for lam in Partition::in_box(3, 3) {
        let base = schur(&lam, &xs, SchurMethod::JacobiTrudi)?;
        for m in SchurMethod::ALL {
            if m == SchurMethod::Alternant && lam.len() > n {
                continue;
            }
            checks.push(Check::compare(&schur(&lam, &xs, m)?, &base));
        }
    }
    Ok(Check::all(checks).into())
}

fn run_quantum_inversion(n: usize) -> Result<Outcome> {
    let mut checks = Vec::new();
    for r in 1..=n {
        for k in 1..=r {
            checks.push(inversion_check(k, r, n)?);
        }
    }
    Ok(Check::all(checks).into())
}

fn run_quantum_truncation(n: usize) -> Result<Outcome> {
    let alph = QuantumAlphabet::x(n);
    let mut checks = Vec::new();
    for r in 1..n {
        for k in 1..=n + 1 - r {
            if truncation_agrees(k, r, n) {
                let strict = alph.h(k as i64, r, HVariant::Strict)?;
                checks.push(Check::compare(&strict, &alph.h(k as i64, r, HVariant::Truncated)?));
            }
        }
    }
    let boundary = &alph.h(2, n - 1, HVariant::Strict)? - &alph.h(2, n - 1, HVariant::Truncated)?;
    let notes = vec![format!("boundary k=2, r={}: strict - truncated = {}", n - 1, boundary.to_text())];
    Ok(Outcome { check: Check::all(checks), notes })
}

fn run_quantum_duality(n: usize) -> Result<Outcome> {
    let x = QuantumAlphabet::new(Family::X, Some(Family::Q), n);
    let y = QuantumAlphabet::new(Family::Y, Some(Family::QP), n);
    let mut checks = Vec::new();
    for k in 0..n {
        for l in 0..n {
            for m in 0..=n as i64 {
                let lhs = super_eh(SuperKind::H, m, &x, k, &y, l)?;
                checks.push(Check::compare(&lhs, &super_eh(SuperKind::E, m, &y, l, &x, k)?));
            }
        }
    }
    Ok(Check::all(checks).into())
}

fn run_pair_determinant(n: usize) -> Result<Outcome> {
    Ok(pair_determinant_check(n).into())
}

fn run_mid_form(n: usize) -> Result<Outcome> {
    Ok(cauchy_universal(n, &CauchyForm::MidForm).into())
}

fn run_three_alphabet(n: usize) -> Result<Outcome> {
    let top = cauchy_universal(n, &CauchyForm::ThreeAlphabetTop);
    let each = cauchy_universal(n, &CauchyForm::ThreeAlphabet(ConvolutionRange::LengthAdditive));
    let mut notes = Vec::new();
    if n <= 3 && !cauchy_universal(n, &CauchyForm::ThreeAlphabet(ConvolutionRange::All)).pass {
        notes.push("summing over all u instead of length-additive u fails".to_string());
    }
    Ok(Outcome { check: Check::all([top, each]), notes })
}

fn run_universal_to_quantum(n: usize) -> Result<Outcome> {
    let x = QuantumAlphabet::new(Family::X, Some(Family::Q), n);
    let y = QuantumAlphabet::new(Family::Y, Some(Family::QP), n);
    let xc = QuantumAlphabet::classical(Family::X, n);
    let checks: Vec<Check> = Permutation::all(n)
        .par_iter()
        .map(|w| {
            let single = universal_single(w);
            let double = specialize_flagged(&specialize_flagged(&universal_double(w), Family::C, &x), Family::D, &y);
            Check::all([
                Check::compare(&double, &double_quantum_schubert(w, &x, &y)),
                Check::compare(&specialize_flagged(&single, Family::C, &x), &quantum_schubert(w, &x)),
                Check::compare(&specialize_flagged(&single, Family::C, &xc), &classical_schubert(w, false)),
                Check::compare(&specialize_flagged(&universal_double_poly(w), Family::C, &xc), &classical_schubert(w, true)),
            ])
        })
        .collect();
    Ok(Check::all(checks).into())
}

fn run_diagonal_vanishing(n: usize) -> Result<Outcome> {
    let x = QuantumAlphabet::x(n);
    let y = QuantumAlphabet::new(Family::Y, Some(Family::Q), n);
    let checks: Vec<Check> = Permutation::all(n)
        .par_iter()
        .filter(|w| !w.is_identity())
        .map(|w| {
            let f = double_quantum_schubert(w, &x, &y);
            let f = f.substitute_with(|v| (v.family == Family::Y).then(|| -Poly::x(v.i as usize)));
            Check::compare(&f, &Poly::zero())
        })
        .collect();
    Ok(Check::all(checks).into())
}

fn g_specialize(f: &Poly, keep_q: bool) -> Poly {
    f.substitute_with(|v| {
        (v.family == Family::G).then(|| match v.j {
            0 => Poly::x(v.i as usize),
            1 if keep_q => Poly::param(Family::Q, v.i as usize),
            _ => Poly::zero(),
        })
    })
}

fn run_second_form_specialization(n: usize) -> Result<Outcome> {
    let x = QuantumAlphabet::x(n);
    let sf = SecondForm::new(n);
    let mut checks = Vec::new();
    for k in 1..=n {
        for i in 0..=k as i64 {
            checks.push(Check::compare(&g_specialize(&sf.get(i, k), true), &x.e(i, k)?));
        }
    }
    for w in Permutation::all(n) {
        let g = second_form_schubert(&w);
        checks.push(Check::compare(&g_specialize(&g, false), &classical_schubert(&w, false)));
        checks.push(Check::compare(&g_specialize(&g, true), &quantum_schubert(&w, &x)));
    }
    Ok(Check::all(checks).into())
}

fn run_gram_schmidt_universal(n: usize) -> Result<Outcome> {
    let (orth, gs) = orthogonality_conjecture(n)?;
    let mut notes: Vec<String> = orth
        .iter()
        .map(|(u, v, p)| format!("<S_{u}(g), S_{v}(g)> = {}", p.to_text()))
        .collect();
    let witness = orth.first().map(|(_, _, p)| p.clone());
    let gs_ok = match &gs {
        Ok(diff) if diff.is_empty() => true,
        Ok(diff) => {
            let names: Vec<String> = diff.iter().map(|w| w.to_string()).collect();
            notes.push(format!("Gram-Schmidt family differs at {}", names.join(", ")));
            false
        }
        Err(e) => {
            notes.push(format!("Gram-Schmidt: {e}"));
            false
        }
    };
    let check = match witness {
        Some(w) => Check::fail(w),
        None if gs_ok => Check::ok(),
        None => Check::fail(Poly::one()),
    };
    Ok(Outcome { check, notes })
}

fn run_pairing_universal(n: usize) -> Result<Outcome> {
    let bad = pairing_conjecture(n)?;
    let notes = bad
        .iter()
        .map(|(i, j, got, want)| format!("I={i} J={j}: {} vs {}", got.to_text(), want.to_text()))
        .collect();
    let check = match bad.first() {
        Some((_, _, got, want)) => Check::compare(got, want),
        None => Check::ok(),
    };
    Ok(Outcome { check, notes })
}

fn run_equivariance(n: usize) -> Result<Outcome> {
    Ok(equivariance_check(n, (n * (n - 1)) as u32)?.into())
}

fn grassmannian_perms(n: usize) -> Vec<Permutation> {
    Permutation::all(n).into_iter().filter(|w| !w.is_identity() && w.is_grassmannian()).collect()
}

fn run_grassmannian_e_form(n: usize) -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut h_fail = 0;
    let perms = grassmannian_perms(n);
    for w in &perms {
        let forms = grassmannian_forms_check(w)?;
        checks.push(forms.e_form);
        if !forms.h_form.pass {
            h_fail += 1;
        }
    }
    let notes = vec![format!("literal h-form differs for {h_fail} of {} Grassmannian permutations", perms.len())];
    Ok(Outcome { check: Check::all(checks), notes })
}

fn run_grassmannian_determinant(n: usize) -> Result<Outcome> {
    let y = QuantumAlphabet::classical(Family::Y, n);
    let yq = QuantumAlphabet::new(Family::Y, Some(Family::QP), n);
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for w in grassmannian_perms(n) {
        let flag = grassmannian_flag(&w)?;
        if flag.fitted {
            notes.push(format!("{w}: fitted flag {:?}", flag.flag));
        }
        let at_zero = grassmannian_determinant_with_flag(&w, &flag.flag, &y)?;
        checks.push(Check::compare(&at_zero, &universal_double_poly(&w)));
        let no_y = at_zero.substitute_with(|v| (v.family == Family::Y).then(Poly::zero));
        checks.push(Check::compare(&no_y, &universal_single(&w)));
        let symbolic = grassmannian_determinant_with_flag(&w, &flag.flag, &yq)?;
        let dropped = symbolic.substitute_with(|v| (v.family == Family::QP).then(Poly::zero));
        checks.push(Check::compare(&dropped, &at_zero));
    }
    Ok(Outcome { check: Check::all(checks), notes })
}

fn run_ninth_variation(n: usize) -> Result<Outcome> {
    let lams = Partition::up_to_size(n + 1);
    let mut checks = Vec::new();
    for lam in &lams {
        for mu in lams.iter().filter(|m| lam.contains(m)) {
            checks.push(Check::compare(&ninth_h_minor(lam, mu), &ninth_e_minor(lam, mu)));
        }
        checks.push(Check::compare(&ninth_giambelli(lam), &ninth_h_minor(lam, &Partition::empty())));
    }
    Ok(Check::all(checks).into())
}

// ---- golden files

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldenEntry {
    Schubert(Permutation, Poly),
    Residue(Poly, Poly),
}

/// Parses `schubert <w> = <poly>` and `residue <monomial> = <poly>` lines;
/// `#` starts a comment.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenEntry>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (head, rhs) = line.split_once('=').ok_or_else(|| Error::Usage(format!("bad golden line: {line}")))?;
        let (kind, key) = head.trim().split_once(' ').ok_or_else(|| Error::Usage(format!("bad golden line: {line}")))?;
        let value = Poly::parse(rhs.trim())?;
        out.push(match kind {
            "schubert" => GoldenEntry::Schubert(key.trim().parse()?, value),
            "residue" => GoldenEntry::Residue(Poly::parse(key.trim())?, value),
            _ => return Err(Error::Usage(format!("bad golden line: {line}"))),
        });
    }
    Ok(out)
}

/// Compares every golden entry with the computed multiparameter family and
/// residues. A displayed top polynomial is also tested for self-orthogonality.
pub fn golden_check(text: &str, n: usize) -> Result<Outcome> {
    let entries = parse_golden(text)?;
    let ideal = IdealPresentation::new(IdealKind::Multiparameter, n)?;
    let mut table = NormalFormTable::new(&ideal);
    let family = gram_schmidt_schubert(&ideal)?;
    let w0 = Permutation::longest(n);
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for entry in &entries {
        let (label, computed, expected) = match entry {
            GoldenEntry::Schubert(w, p) => (format!("schubert {w}"), family[w].clone(), p.clone()),
            GoldenEntry::Residue(m, p) => (format!("residue {}", m.to_text()), table.residue(m), p.clone()),
        };
        let check = Check::compare(&computed, &expected);
        if !check.pass {
            notes.push(format!("{label}: computed - golden = {}", check.witness.to_text()));
        }
        if let GoldenEntry::Schubert(w, p) = entry {
            if *w == w0 && !check.pass {
                let self_pairing = table.pairing(p, p);
                if !self_pairing.is_zero() {
                    notes.push(format!("golden schubert {w} pairs with itself to {}, not 0", self_pairing.to_text()));
                }
            }
        }
        checks.push(check);
    }
    Ok(Outcome { check: Check::all(checks), notes })
}

// ---- compute

/// How the object to compute is indexed on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Index {
    Perm(Permutation),
    /// Grassmannian permutation given by its shape and descent.
    Shape(Partition, usize),
    Comp(Composition),
}

pub const FAMILIES: &[&str] = &[
    "classical",
    "classical-double",
    "quantum",
    "quantum-double",
    "universal",
    "universal-double-y",
    "universal-double",
    "universal-I",
    "second-form",
    "second-form-double",
    "multiparam",
    "schur",
    "ninth-variation",
    "quantum-e",
    "quantum-h",
    "deformed-e",
    "box",
];

fn index_perm(index: &Index, n: usize) -> Result<Permutation> {
    let w = match index {
        Index::Perm(w) => w.clone(),
        Index::Shape(shape, r) => Permutation::from_grassmannian(shape, *r, n)?,
        Index::Comp(c) => return Err(Error::InvalidPermutation(c.to_string())),
    };
    if w.n() != n {
        return Err(Error::InvalidPermutation(format!("{w} is not in S_{n}")));
    }
    Ok(w)
}

fn index_pair(index: &Index) -> Result<(i64, usize)> {
    match index {
        Index::Comp(c) if c.len() == 2 => Ok((c.get(0) as i64, c.get(1) as usize)),
        _ => Err(Error::Usage("expected --comp i,k".into())),
    }
}

fn index_shape(index: &Index) -> Result<Partition> {
    match index {
        Index::Shape(shape, _) => Ok(shape.clone()),
        Index::Comp(c) => Ok(Partition::new(c.entries().iter().map(|&v| v as usize).collect())),
        Index::Perm(_) => Err(Error::Usage("expected --shape".into())),
    }
}

/// Evaluates a polynomial family at the given index in rank `n`.
pub fn compute(family: &str, index: &Index, n: usize) -> Result<Poly> {
    if !FAMILIES.contains(&family) {
        return Err(Error::UnknownFamily(family.to_string()));
    }
    let x = QuantumAlphabet::x(n);
    Ok(match family {
        "classical" => classical_schubert(&index_perm(index, n)?, false),
        "classical-double" => classical_schubert(&index_perm(index, n)?, true),
        "quantum" => quantum_schubert(&index_perm(index, n)?, &x),
        "quantum-double" => {
            let y = QuantumAlphabet::new(Family::Y, Some(Family::QP), n);
            double_quantum_schubert(&index_perm(index, n)?, &x, &y)
        }
        "universal" => universal_single(&index_perm(index, n)?),
        "universal-double-y" => universal_double_poly(&index_perm(index, n)?),
        "universal-double" => universal_double(&index_perm(index, n)?),
        "universal-I" => match index {
            Index::Comp(c) => universal_s_i(c, n)?,
            _ => return Err(Error::Usage("universal-I expects --comp".into())),
        },
        "second-form" => second_form_schubert(&index_perm(index, n)?),
        "second-form-double" => second_form_double(&index_perm(index, n)?),
        "multiparam" => {
            let w = index_perm(index, n)?;
            let ideal = IdealPresentation::new(IdealKind::Multiparameter, n)?;
            gram_schmidt_schubert(&ideal)?.remove(&w).expect("every permutation has a polynomial")
        }
        "schur" => schur(&index_shape(index)?, &x_alphabet(n), SchurMethod::JacobiTrudi)?,
        "ninth-variation" => ninth_variation(&index_shape(index)?, &Partition::empty(), NinthForm::HDet, 0)?,
        "quantum-e" => {
            let (i, k) = index_pair(index)?;
            x.e(i, k)?
        }
        "quantum-h" => {
            let (i, k) = index_pair(index)?;
            x.h(i, k, HVariant::Auto)?
        }
        "deformed-e" => match index {
            Index::Comp(c) if c.len() == 1 && (c.get(0) as usize) <= n => deformed_elementary(c.get(0) as usize, n),
            _ => return Err(Error::Usage("deformed-e expects --comp m with m <= n".into())),
        },
        "box" => {
            let (i, k) = index_pair(index)?;
            SecondForm::new(n.max(k)).get(i, k)
        }
        _ => unreachable!(),
    })
}

/// `⟨monomial⟩` over the named ideal.
pub fn residue_of(ideal: &str, n: usize, monomial: &str) -> Result<Poly> {
    let kind = match ideal {
        "multiparam" => IdealKind::Multiparameter,
        "universal" => IdealKind::Universal,
        "classical" => IdealKind::Classical,
        other => return Err(Error::Usage(format!("unknown ideal {other:?}"))),
    };
    let m = Poly::parse(monomial)?;
    if m.terms().iter().any(|(mono, _)| mono.factors().iter().any(|(v, _)| v.family != Family::X || v.i < 1 || v.i as usize > n)) {
        return Err(Error::Usage(format!("{monomial} is not a polynomial in x1..x{n}")));
    }
    let ideal = IdealPresentation::new(kind, n)?;
    Ok(NormalFormTable::new(&ideal).residue(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<&str> = registry().iter().map(|c| c.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), registry().len());
    }

    #[test]
    fn verify_errors() {
        assert!(matches!(verify("no-such-identity", 3), Err(Error::UnknownIdentity(_))));
        assert!(matches!(verify("cauchy-universal", 1), Err(Error::UnsupportedRank { .. })));
        assert!(verify("cauchy-universal", 3).unwrap().passed());
    }

    #[test]
    fn golden_files_are_canonical() {
        for text in [GOLDEN_RANK3, GOLDEN_RANK4] {
            for line in text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()) {
                let (_, rhs) = line.split_once(" = ").unwrap();
                assert_eq!(Poly::parse(rhs).unwrap().to_text(), rhs);
            }
        }
    }

    #[test]
    fn compute_examples() {
        let p = |w: &str| Index::Perm(w.parse().unwrap());
        assert_eq!(compute("multiparam", &p("231"), 3).unwrap().to_text(), "x1*x2 + t[1,2]");
        assert_eq!(compute("universal", &p("312"), 3).unwrap(), Poly::parse("c[1,2]*c[1,1] - c[2,2]").unwrap());
        assert!(compute("classical", &p("123"), 3).unwrap().is_one());
        assert!(matches!(compute("nope", &p("123"), 3), Err(Error::UnknownFamily(_))));
        assert!(matches!(compute("classical", &p("1234"), 3), Err(Error::InvalidPermutation(_))));
    }

    #[test]
    fn failures_carry_witnesses() {
        let corrupted = GOLDEN_RANK3.replace("schubert 213 = x1", "schubert 213 = x2");
        let out = golden_check(&corrupted, 3).unwrap();
        assert!(!out.check.pass && !out.check.witness.is_zero());
    }
}
