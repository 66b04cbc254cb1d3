mod common;

use common::{poly, rational};
use homlie_core::poly::{int, rat};
use homlie_core::{LambdaContext, Poly, Rational};
use proptest::prelude::*;

fn ctx() -> LambdaContext {
    LambdaContext::new(["l", "m"]).unwrap()
}

/// Term-by-term evaluation, independent of `compose`.
fn eval(p: &Poly, point: &[Rational]) -> Rational {
    let mut total = int(0);
    for (e, c) in p.to_terms() {
        let mut v = c;
        for (x, k) in point.iter().zip(e) {
            for _ in 0..k {
                v *= x;
            }
        }
        total += v;
    }
    total
}

fn constant_images(ctx: &LambdaContext, point: &[Rational]) -> (Vec<Poly>, Poly) {
    let empty = LambdaContext::empty();
    let _ = ctx;
    let slots = point[..point.len() - 1].iter().map(|c| Poly::constant(&empty, c.clone())).collect();
    (slots, Poly::constant(&empty, point[point.len() - 1].clone()))
}

proptest! {
    #[test]
    fn addition_commutes(a in poly(ctx(), 4, 3), b in poly(ctx(), 4, 3)) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_distributes(a in poly(ctx(), 3, 2), b in poly(ctx(), 3, 2), c in poly(ctx(), 3, 2)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn substitution_is_multiplicative(a in poly(ctx(), 3, 2), b in poly(ctx(), 3, 2), img in poly(ctx(), 3, 1)) {
        let lhs = (&a * &b).substitute_slot("m", &img).unwrap();
        let rhs = &a.substitute_slot("m", &img).unwrap() * &b.substitute_slot("m", &img).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn double_shift_is_the_identity(p in poly(LambdaContext::new(["m"]).unwrap(), 4, 3)) {
        let c = ctx();
        let p = p.embed(&c).unwrap();
        let l = Poly::slot(&c, "l").unwrap();
        let m = Poly::slot(&c, "m").unwrap();
        let d = Poly::d(&c);
        let once = p.substitute_slot("m", &-&(&l + &d)).unwrap();
        let twice = once.substitute_slot("l", &-&(&m + &d)).unwrap();
        prop_assert_eq!(twice, p);
    }

    #[test]
    fn evaluation_matches_composition(p in poly(ctx(), 4, 3), x in rational(), y in rational(), z in rational()) {
        let point = [x, y, z];
        let (slots, d) = constant_images(&ctx(), &point);
        let c = p.compose(&LambdaContext::empty(), &slots, &d);
        prop_assert_eq!(c.as_constant().unwrap_or_else(|| int(0)), eval(&p, &point));
    }

    #[test]
    fn printing_round_trips(p in poly(ctx(), 5, 3)) {
        prop_assert_eq!(Poly::parse(&p.to_string(), &ctx()).unwrap(), p);
    }
}

#[test]
fn evaluation_oracle_on_a_fixed_polynomial() {
    // (d + 2l)(d - l) at l = 1/2, d = 3: (3 + 1)(3 - 1/2) = 10
    let c = LambdaContext::new(["l"]).unwrap();
    let p = Poly::parse("(d + 2*l)*(d - l)", &c).unwrap();
    assert_eq!(eval(&p, &[rat(1, 2), int(3)]), int(10));
    assert_eq!(p.to_string(), "d^2 + l*d - 2*l^2");
}
