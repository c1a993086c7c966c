use cohom31_core::linalg::{fmt_scalar, MinkVector};
use cohom31_core::orbit::orbit_dimension;
use cohom31_core::parse::{parse_element, parse_point, parse_rational};
use cohom31_core::{bracket, closure_check, standard_generator, GeneratorLabel, IsoAlgebraElement, Scalar};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn element() -> impl Strategy<Value = IsoAlgebraElement> {
    prop::collection::vec(scalar(), 10).prop_map(|c| IsoAlgebraElement::from_coords(&c))
}

fn point() -> impl Strategy<Value = MinkVector> {
    prop::collection::vec(scalar(), 4).prop_map(|c| MinkVector([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
}

proptest! {
    #[test]
    fn element_display_parses_back(a in element()) {
        prop_assert_eq!(parse_element(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn rational_display_parses_back(q in scalar()) {
        prop_assert_eq!(parse_rational(&fmt_scalar(&q)).unwrap(), q);
    }

    #[test]
    fn point_display_parses_back(p in point()) {
        prop_assert_eq!(parse_point(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn bracket_is_antisymmetric(a in element(), b in element()) {
        prop_assert_eq!(bracket(&a, &b), bracket(&b, &a).scale(&Scalar::from_integer((-1).into())));
    }

    #[test]
    fn bracket_is_bilinear(a in element(), b in element(), c in element(), s in scalar()) {
        let lhs = bracket(&a.scale(&s).add(&b), &c);
        let rhs = bracket(&a, &c).scale(&s).add(&bracket(&b, &c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orbit_dimension_survives_translation_conjugation(p in point(), q in point()) {
        use GeneratorLabel::*;
        let h = closure_check(&[standard_generator(Yk1), standard_generator(Yk2), standard_generator(Yk3), standard_generator(E4)]).unwrap();
        let moved = h.translate_conjugate(&q);
        let shifted = &p - &q;
        prop_assert_eq!(orbit_dimension(&h, &p).dim, orbit_dimension(&moved, &shifted).dim);
    }
}
