use super::*;
use crate::ring::PositionRule;
use crate::Rational;

type P = Polynomial<Rational>;
type V = ModuleVector<Rational>;
type S = Submodule<Rational>;

fn x() -> P {
    P::var(2, 0)
}
fn y() -> P {
    P::var(2, 1)
}
fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
fn vec2(a: P, b: P) -> V {
    V::new(2, vec![a, b]).unwrap()
}
fn vec1(a: P) -> V {
    V::new(2, vec![a]).unwrap()
}

#[test]
fn normal_form_examples() {
    let ord = ModuleOrder::default_for(2, 2);
    let g = [vec2(x(), P::zero(2))];
    let r = normal_form(&vec2(&x() * &x(), P::zero(2)), &g, &ord).unwrap();
    assert!(r.is_zero());
    let r = normal_form(&vec2(&(&x() * &y()) + &y(), P::zero(2)), &g, &ord).unwrap();
    assert_eq!(r, vec2(y(), P::zero(2)));
    let v = vec2(x(), y());
    assert_eq!(normal_form(&v, &[], &ord).unwrap(), v);
}

#[test]
fn normal_form_rejects_mismatched_rank() {
    let ord = ModuleOrder::default_for(2, 2);
    let err = normal_form(&vec2(x(), y()), &[vec1(x())], &ord).unwrap_err();
    assert_eq!(err, AlgebraError::RankMismatch { expected: 2, found: 1 });
}

#[test]
fn buchberger_examples() {
    let ord = ModuleOrder::default_for(2, 1);
    let gb = buchberger(&[vec1(&x() + &y()), vec1(&x() - &y())], 2, 1, &ord).unwrap();
    assert_eq!(gb.basis, vec![vec1(x()), vec1(y())]);

    let pot = ModuleOrder::pot(MonomialOrder::grevlex(2), 2);
    let gens = [vec2(x(), P::zero(2)), vec2(P::zero(2), y())];
    let gb = buchberger(&gens, 2, 2, &pot).unwrap();
    assert_eq!(gb.basis, gens.to_vec());
    assert_eq!(gb.stats.formed, 0);

    let gb = buchberger::<Rational>(&[], 2, 2, &pot).unwrap();
    assert!(gb.basis.is_empty());
}

#[test]
fn reduced_basis_is_monic() {
    let ord = ModuleOrder::default_for(2, 1);
    let gb = buchberger(&[vec1(x().scale(&q(6)) + y().scale(&q(4)))], 2, 1, &ord).unwrap();
    assert_eq!(gb.basis, vec![vec1(&x() + &y().scale(&Rational::new(2.into(), 3.into())))]);
}

#[test]
fn membership_examples() {
    let s = S::new(2, 2, vec![vec2(x(), P::zero(2))]).unwrap();
    assert!(s.is_member(&s.generators()[0]).unwrap());
    assert!(!s.is_member(&vec2(y(), P::zero(2))).unwrap());
    assert!(s.is_member(&V::zero(2, 2)).unwrap());
    assert!(s.is_member(&V::zero(2, 1)).is_err());
}

#[test]
fn equality_examples() {
    let a = S::ideal(2, vec![&x() + &y(), &x() - &y()]).unwrap();
    let b = S::ideal(2, vec![x(), y()]).unwrap();
    assert!(a.module_equal(&b).unwrap());
    let c = S::ideal(2, vec![&x() * &x()]).unwrap();
    let d = S::ideal(2, vec![x()]).unwrap();
    assert!(!d.module_equal(&c).unwrap());
    assert!(a.module_equal(&a).unwrap());
}

#[test]
fn sum_examples() {
    let s = S::ideal(2, vec![&x() * &y() - P::one(2)]).unwrap();
    let z = S::zero(2, 1);
    assert!(s.sum(&z).unwrap().module_equal(&s).unwrap());
    let sx = S::ideal(2, vec![x()]).unwrap();
    let sy = S::ideal(2, vec![y()]).unwrap();
    let both = S::ideal(2, vec![x(), y()]).unwrap();
    assert!(sx.sum(&sy).unwrap().module_equal(&both).unwrap());
    let g = S::ideal(2, vec![s.generators()[0].entry(0).clone()]).unwrap();
    assert!(s.sum(&g).unwrap().module_equal(&s).unwrap());
}

fn example_2_1() -> S {
    // The cyclic module generated by (-1, d/dt) in A^2, A = Q[d/dt].
    let d = P::var(1, 0);
    S::new(1, 2, vec![V::new(1, vec![-P::one(1), d]).unwrap()]).unwrap()
}

#[test]
fn block_projection_and_preimage() {
    let p = example_2_1();
    assert!(p.project_block(&[0]).unwrap().module_equal(&S::full(1, 1)).unwrap());
    let pre = p.preimage_block(&[0]).unwrap();
    assert!(pre.reduced_basis().unwrap().is_empty());
    assert!(S::zero(2, 3).project_block(&[1, 2]).unwrap().reduced_basis().unwrap().is_empty());
    let full = S::full(2, 3);
    assert!(full.preimage_block(&[0, 2]).unwrap().module_equal(&S::full(2, 2)).unwrap());
}

#[test]
fn block_errors() {
    let p = example_2_1();
    assert_eq!(
        p.project_block(&[2]).unwrap_err(),
        AlgebraError::InvalidPosition { position: 2, rank: 2 }
    );
    assert_eq!(p.preimage_block(&[1, 1]).unwrap_err(), AlgebraError::DuplicatePosition(1));
}

#[test]
fn intersection_examples() {
    let sx = S::ideal(2, vec![x()]).unwrap();
    let sy = S::ideal(2, vec![y()]).unwrap();
    let meet = sx.intersect(&sy).unwrap();
    assert!(meet.module_equal(&S::ideal(2, vec![&x() * &y()]).unwrap()).unwrap());
    let s = S::new(2, 2, vec![vec2(x(), y()), vec2(y(), P::zero(2))]).unwrap();
    assert!(s.intersect(&s).unwrap().module_equal(&s).unwrap());
    assert!(s.intersect(&S::full(2, 2)).unwrap().module_equal(&s).unwrap());
}

#[test]
fn lift_produces_cofactors() {
    let s = S::new(2, 2, vec![vec2(x(), y()), vec2(y(), P::zero(2))]).unwrap();
    let v = vec2(&(&x() * &x()) + &(&y() * &y()), &x() * &y());
    let h = s.lift(&v).unwrap().expect("member");
    assert_eq!(s.combine(&h).unwrap(), v);
    assert!(s.lift(&vec2(P::one(2), P::zero(2))).unwrap().is_none());
}

#[test]
fn cache_is_consulted() {
    let s = S::ideal(2, vec![x(), y()]).unwrap();
    let ord = s.default_order();
    let cached = s.clone().with_groebner(&ord).unwrap();
    assert_eq!(cached.groebner(&ord).unwrap().basis, s.groebner(&ord).unwrap().basis);
    assert!(std::sync::Arc::ptr_eq(
        &cached.groebner(&ord).unwrap(),
        &cached.groebner(&ord).unwrap()
    ));
}

#[test]
fn rank_zero_modules_are_trivial() {
    let z = S::zero(2, 0);
    assert!(z.reduced_basis().unwrap().is_empty());
    assert!(z.is_member(&V::zero(2, 0)).unwrap());
    assert!(z.module_equal(&S::full(2, 0)).unwrap());
    let ord = ModuleOrder::new(MonomialOrder::grevlex(2), PositionRule::Pot, 0);
    assert!(buchberger::<Rational>(&[], 2, 0, &ord).unwrap().basis.is_empty());
}
