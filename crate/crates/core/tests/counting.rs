use leibniz_core::fincat::{const_set, Exponential, Guard};
use leibniz_core::lattice::{Elem, FiniteLattice};
use leibniz_core::shapes::{enumerate_horn, enumerate_simplex, HornSpec};

/// Every tuple in `L^n`, filtered by the padded simplex and horn predicates.
fn brute(l: &FiniteLattice, n: usize, k: Option<usize>) -> usize {
    let total = l.size().pow(n as u32);
    (0..total)
        .filter(|&code| {
            let mut coords: Vec<Elem> = vec![l.top()];
            let mut c = code;
            let mut interior = vec![0; n];
            for slot in interior.iter_mut().rev() {
                *slot = c % l.size();
                c /= l.size();
            }
            coords.extend(interior);
            coords.push(l.bottom());
            let decreasing = coords.windows(2).all(|w| l.le(w[1], w[0]));
            let in_horn = match k {
                None => true,
                Some(k) => (0..=n).any(|j| j != k && coords[j] == coords[j + 1]),
            };
            decreasing && in_horn
        })
        .count()
}

#[test]
fn triangle_and_its_inner_horn_over_c3() {
    let c3 = FiniteLattice::chain(3).unwrap();
    assert_eq!(brute(&c3, 2, None), 6);
    assert_eq!(brute(&c3, 2, Some(1)), 5);
    assert_eq!(enumerate_simplex(&c3, 2, 100).unwrap().len(), 6);
    assert_eq!(enumerate_horn(&c3, HornSpec::new(2, 1).unwrap(), 100).unwrap().len(), 5);
}

#[test]
fn simplices_over_c2() {
    let c2 = FiniteLattice::chain(2).unwrap();
    for n in 0..=8 {
        assert_eq!(brute(&c2, n, None), n + 1);
        assert_eq!(enumerate_simplex(&c2, n, 1000).unwrap().len(), n + 1);
    }
}

#[test]
fn enumerations_match_brute_force() {
    let lattices = [
        FiniteLattice::chain(3).unwrap(),
        FiniteLattice::chain(4).unwrap(),
        FiniteLattice::boolean(2).unwrap(),
    ];
    for l in &lattices {
        for n in 1..=4 {
            assert_eq!(enumerate_simplex(l, n, 100_000).unwrap().len(), brute(l, n, None));
            for k in 0..=n {
                let spec = HornSpec::new(n, k).unwrap();
                assert_eq!(enumerate_horn(l, spec, 100_000).unwrap().len(), brute(l, n, Some(k)));
            }
        }
    }
}

#[test]
fn const_sets_partition_the_codomain() {
    for s in 0..=3 {
        for t in 0..=3 {
            let maps = Exponential::new(s, t, Guard::default()).unwrap();
            let total: usize = maps.iter().map(|f| const_set(&f).len()).sum();
            assert_eq!(total, t, "|S| = {s}, |T| = {t}");
        }
    }
}
