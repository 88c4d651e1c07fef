use std::collections::HashSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use schubert_core::residue::{IdealKind, IdealPresentation, NormalFormTable};
use schubert_core::schubert::{divided_difference, divided_difference_word, staircase_monomial};
use schubert_core::{Family, Monomial, Permutation, Poly, Var};

fn build(terms: &[(i8, [u8; 3])], params: &[Var], pexps: &[u8]) -> Poly {
    Poly::from_terms(terms.iter().enumerate().map(|(k, (c, e))| {
        let mut pairs: Vec<(Var, u32)> = (0..3).map(|i| (Var::x(i + 1), e[i] as u32)).collect();
        if !params.is_empty() {
            pairs.push((params[k % params.len()], pexps[k % pexps.len()] as u32));
        }
        (Monomial::from_pairs(pairs.into_iter().filter(|(_, e)| *e > 0)), BigInt::from(*c))
    }))
}

fn x_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((any::<i8>(), [0u8..4, 0u8..4, 0u8..4]), 0..6).prop_map(|t| build(&t, &[], &[]))
}

fn params(kind: IdealKind) -> Vec<Var> {
    match kind {
        IdealKind::Multiparameter => vec![Var::pair(Family::T, 1, 2), Var::pair(Family::T, 1, 3), Var::pair(Family::T, 2, 3)],
        IdealKind::Universal => vec![Var::pair(Family::G, 1, 1), Var::pair(Family::G, 2, 1), Var::pair(Family::G, 1, 2)],
        IdealKind::Classical => vec![],
    }
}

fn param_poly(kind: IdealKind) -> impl Strategy<Value = Poly> {
    (prop::collection::vec((any::<i8>(), [0u8..5, 0u8..4, 0u8..4]), 0..5), prop::collection::vec(0u8..2, 1..4))
        .prop_map(move |(t, pe)| build(&t, &params(kind), &pe))
}

/// Every reduced word of `w`, built by stripping right descents.
fn reduced_words(w: &Permutation) -> HashSet<Vec<usize>> {
    if w.is_identity() {
        return HashSet::from([vec![]]);
    }
    let n = w.n();
    let mut out = HashSet::new();
    for i in 1..n {
        if w.at(i) > w.at(i + 1) {
            for mut word in reduced_words(&w.compose(&Permutation::simple(i, n))) {
                word.push(i);
                out.insert(word);
            }
        }
    }
    out
}

#[test]
fn word_independence_on_s4() {
    let top = staircase_monomial(4, Family::X);
    let probe = Poly::parse("x1^3*x2^2*x3 + 2*x1*x2^3*x4^2 - x3^4*x4").unwrap();
    for w in Permutation::all(4) {
        let words = reduced_words(&w);
        assert!(words.iter().all(|word| word.len() == w.length()));
        for f in [&top, &probe] {
            let values: HashSet<String> =
                words.iter().map(|word| divided_difference_word(f, word, Family::X).to_text()).collect();
            assert_eq!(values.len(), 1, "w={w}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn text_round_trip(f in param_poly(IdealKind::Multiparameter)) {
        prop_assert_eq!(Poly::parse(&f.to_text()).unwrap(), f.clone());
        prop_assert_eq!(Poly::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn divided_differences(f in x_poly()) {
        for i in 1..=2 {
            let once = divided_difference(&f, i, Family::X);
            prop_assert!(divided_difference(&once, i, Family::X).is_zero());
        }
        let a = divided_difference_word(&f, &[1, 2, 1], Family::X);
        let b = divided_difference_word(&f, &[2, 1, 2], Family::X);
        prop_assert_eq!(a, b);
        let g = &f * &Poly::x(4);
        prop_assert_eq!(
            divided_difference_word(&g, &[1, 3], Family::X),
            divided_difference_word(&g, &[3, 1], Family::X)
        );
    }

    #[test]
    fn multiparameter_normal_forms(f in param_poly(IdealKind::Multiparameter)) {
        normal_form_laws(IdealKind::Multiparameter, &f)?;
    }

    #[test]
    fn universal_normal_forms(f in param_poly(IdealKind::Universal)) {
        normal_form_laws(IdealKind::Universal, &f)?;
    }

    #[test]
    fn classical_normal_forms(f in param_poly(IdealKind::Classical)) {
        normal_form_laws(IdealKind::Classical, &f)?;
    }

    #[test]
    fn pairing_laws(f in param_poly(IdealKind::Multiparameter), g in x_poly(), h in x_poly(), a in -5i64..5) {
        let ideal = IdealPresentation::new(IdealKind::Multiparameter, 3).unwrap();
        let mut table = NormalFormTable::new(&ideal);
        prop_assert_eq!(table.pairing(&f, &g), table.pairing(&g, &f));
        let left = table.pairing(&f, &(&g + &h.scale(&a.into())));
        let right = &table.pairing(&f, &g) + &table.pairing(&f, &h).scale(&a.into());
        prop_assert_eq!(left, right);
    }
}

fn normal_form_laws(kind: IdealKind, f: &Poly) -> Result<(), TestCaseError> {
    let ideal = IdealPresentation::new(kind, 3).unwrap();
    let mut table = NormalFormTable::new(&ideal);
    let (nf, cert) = table.reduce_with_certificate(f);
    prop_assert_eq!(table.reduce(&nf), nf.clone());
    let combo: Poly = cert.iter().zip(ideal.generators()).map(|(c, e)| c * e).sum();
    prop_assert_eq!(f - &nf, combo);
    for (m, _) in nf.collect_in(&[Family::X]) {
        let e: Vec<u32> = (1..=3).map(|i| m.exponent(Var::x(i))).collect();
        prop_assert!(e[0] <= 2 && e[1] <= 1 && e[2] == 0, "{:?} is not standard", e);
    }
    Ok(())
}
