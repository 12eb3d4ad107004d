use ihall::bar::IBar;
use ihall::ctx::Ctx;
use ihall::ihall::{IHallAlgebra, IHallElt};
use ihall::io::format::{element_from_json, element_to_json};
use ihall::modfq::ModClass;
use ihall::quiver::{IQuiver, RawQuiver};
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn a3_outer() -> &'static Arc<IHallAlgebra> {
    static A: OnceLock<Arc<IHallAlgebra>> = OnceLock::new();
    A.get_or_init(|| {
        let q = IQuiver::validate(&RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")])).unwrap();
        IHallAlgebra::from_ctx(Ctx::new(q).unwrap()).unwrap()
    })
}

/// A basis element `K_a u_l` with small class and `K`-exponent.
fn basis() -> impl Strategy<Value = IHallElt> {
    let c = a3_outer().ctx().clone();
    let nr = c.nroots();
    (proptest::collection::vec(0u32..2, nr), proptest::collection::vec(-1i64..2, 3)).prop_filter_map("class too large", move |(m, k)| {
        let l = ModClass(m);
        (c.class_dim(&l).iter().all(|&d| d <= 2)).then(|| IHallElt::basis(k, l))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_is_associative(x in basis(), y in basis(), z in basis()) {
        let h = a3_outer();
        let l = h.iproduct(&h.iproduct(&x, &y).unwrap(), &z).unwrap();
        let r = h.iproduct(&x, &h.iproduct(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn bar_is_an_involution_reversing_products(x in basis(), y in basis()) {
        let h = a3_outer();
        let b = IBar::new(h.clone());
        prop_assert_eq!(b.bar(&b.bar(&x).unwrap()).unwrap(), x.clone());
        let xy = h.iproduct(&x, &y).unwrap();
        prop_assert_eq!(b.bar(&xy).unwrap(), h.iproduct(&b.bar(&y).unwrap(), &b.bar(&x).unwrap()).unwrap());
    }

    #[test]
    fn element_json_round_trip(x in basis(), y in basis()) {
        let h = a3_outer();
        let e = h.iproduct(&x, &y).unwrap();
        let text = element_to_json(h.ctx(), &e);
        let back = element_from_json(h.ctx(), &text).unwrap();
        prop_assert_eq!(element_to_json(h.ctx(), &back), text);
        prop_assert_eq!(back, e);
    }
}
