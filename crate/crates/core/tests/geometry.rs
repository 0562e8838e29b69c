use chaingeo::exactnum::{signature, GaussianRational, RMatrix};
use chaingeo::heisenberg::{from_chart, project, to_chart, w_to_subspace, HeisPoint, WPoint};
use chaingeo::hermitian::{HermSpace, Subspace};
use chaingeo::sampler::{SampleConfig, Sampler};
use chaingeo::shilov::{
    bergmann_index, cartan_invariant, chain_through, is_shilov_point, member, sign_diagonal,
    transverse, ShilovPoint,
};
use chaingeo::Error;

fn space(m: usize, n: usize) -> HermSpace {
    HermSpace::new(m, n).unwrap()
}

#[test]
fn pairing_on_unit_vectors() {
    let s = space(2, 3);
    let e = |i| s.unit(i);
    assert_eq!(s.pairing(&e(0), &e(3)).unwrap(), 1.into());
    assert_eq!(s.pairing(&e(2), &e(2)).unwrap(), (-1).into());
    assert_eq!(s.pairing(&e(0), &e(0)).unwrap(), 0.into());
}

#[test]
fn restriction_and_complements() {
    let s = space(2, 3);
    let vi = ShilovPoint::v_inf(s);
    assert!(vi.subspace().restrict_form().is_zero());
    let neg = Subspace::coordinate(s, &[2]);
    assert_eq!(neg.restrict_form(), RMatrix::from_int_rows(&[&[-1]]));

    assert_eq!(
        vi.subspace().orth_complement(),
        Subspace::coordinate(s, &[0, 1, 2])
    );
    assert_eq!(Subspace::full(s).orth_complement(), Subspace::zero(s));
    for plus in [vec![true, false], vec![false, false]] {
        let vd = ShilovPoint::v_d(s, &plus).unwrap();
        // V_d^perp = V_d + <e_{m+1}..e_n>
        let want = Subspace::span(&[vd.subspace(), &Subspace::coordinate(s, &[2])]).unwrap();
        assert_eq!(vd.subspace().orth_complement(), want);
    }
}

#[test]
fn span_and_intersection() {
    let s = space(2, 3);
    let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
    let both = Subspace::span(&[vi.subspace(), v0.subspace()]).unwrap();
    assert_eq!(both, Subspace::coordinate(s, &[0, 1, 3, 4]));

    let mut rng = Sampler::new(&SampleConfig::new(2, 3, 3));
    for _ in 0..20 {
        let a = Subspace::new(s, &rng.matrix(5, 2)).unwrap();
        let b = Subspace::new(s, &rng.matrix(5, 3)).unwrap();
        let sum = Subspace::span(&[&a, &b]).unwrap();
        let meet = a.intersect(&b).unwrap();
        assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        // modular law with a ⊂ c
        let c = Subspace::span(&[&a, &Subspace::new(s, &rng.matrix(5, 1)).unwrap()]).unwrap();
        let lhs = Subspace::span(&[&a, &b.intersect(&c).unwrap()]).unwrap();
        let rhs = Subspace::span(&[&a, &b]).unwrap().intersect(&c).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn shilov_points_and_transversality() {
    let s = space(2, 3);
    let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
    let vd = ShilovPoint::v_d(s, &[true, false]).unwrap();
    assert!(is_shilov_point(vi.subspace()));
    assert!(is_shilov_point(vd.subspace()));
    assert!(!is_shilov_point(&Subspace::coordinate(space(1, 2), &[1])));
    assert!(matches!(
        ShilovPoint::new(Subspace::coordinate(s, &[0, 2])),
        Err(Error::NotIsotropic)
    ));

    assert!(transverse(&vi, &v0));
    assert!(!transverse(&vi, &vi));
    assert!(transverse(&v0, &vd));
    assert!(matches!(chain_through(&vi, &vi), Err(Error::NotTransverse)));
}

#[test]
fn chains_through_pairs() {
    let s = space(2, 3);
    let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
    let vd = ShilovPoint::v_d(s, &[true, false]).unwrap();
    let t = chain_through(&v0, &vd).unwrap();
    let sig = signature(&t.subspace().restrict_form()).unwrap();
    assert_eq!((sig.pos, sig.neg), (2, 2));
    assert_eq!(t, chain_through(&vd, &v0).unwrap());
    assert!(member(&vd, &chain_through(&vi, &v0).unwrap()));
}

#[test]
fn standard_triples() {
    // (v_inf, v_d, v_0) sums the rank-one values blockwise
    let s = space(3, 4);
    let mut counts = std::collections::BTreeMap::new();
    for mask in 0..8u32 {
        let plus: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
        let vd = ShilovPoint::v_d(s, &plus).unwrap();
        let idx = bergmann_index(&ShilovPoint::v_inf(s), &vd, &ShilovPoint::v_0(s)).unwrap();
        let plus_count = plus.iter().filter(|&&p| p).count() as i64;
        assert_eq!(idx, 3 - 2 * plus_count);
        *counts.entry(idx).or_insert(0) += 1;
    }
    assert_eq!(
        counts.into_iter().collect::<Vec<_>>(),
        [(-3, 1), (-1, 3), (1, 3), (3, 1)]
    );

    let r1 = space(1, 1);
    let c = cartan_invariant(
        &ShilovPoint::v_inf(r1),
        &ShilovPoint::v_0(r1),
        &ShilovPoint::v_d(r1, &[true]).unwrap(),
    )
    .unwrap();
    assert!((c - 1.0).abs() < 1e-9);
}

#[test]
fn bergmann_rejects_degenerate_triples() {
    let s = space(1, 2);
    let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
    assert_eq!(bergmann_index(&vi, &vi, &v0), Err(Error::NotTransverse));
    let mut rng = Sampler::new(&SampleConfig::new(1, 2, 9));
    let off = loop {
        let p = rng.chart_point();
        if !member(&p, &chain_through(&vi, &v0).unwrap()) && transverse(&p, &v0) {
            break p;
        }
    };
    assert_eq!(bergmann_index(&vi, &v0, &off), Err(Error::NotCoplanar));
}

#[test]
fn chart_coordinates() {
    let s = space(2, 3);
    assert_eq!(
        to_chart(&ShilovPoint::v_0(s)).unwrap(),
        HeisPoint::origin(s)
    );
    let plus = [true, false];
    let p = to_chart(&ShilovPoint::v_d(s, &plus).unwrap()).unwrap();
    assert!(p.x.is_zero());
    assert_eq!(
        p.y,
        sign_diagonal(&plus).scale(&GaussianRational::from_ints(-1, 0))
    );
    assert_eq!(
        to_chart(&ShilovPoint::v_inf(s)),
        Err(Error::NotTransverseToVinf)
    );

    let mut rng = Sampler::new(&SampleConfig::new(2, 3, 2));
    for _ in 0..20 {
        let q = rng.heis_point();
        assert_eq!(to_chart(&from_chart(s, &q).unwrap()).unwrap(), q);
    }
}

#[test]
fn w_space_origin() {
    let s = space(2, 3);
    let t = w_to_subspace(
        s,
        &WPoint {
            a: RMatrix::zeros(1, 2),
        },
    )
    .unwrap();
    let want = Subspace::span(&[
        ShilovPoint::v_inf(s).subspace(),
        ShilovPoint::v_0(s).subspace(),
    ])
    .unwrap();
    assert_eq!(t.subspace(), &want);
    assert_eq!(project(&HeisPoint::origin(s)).a, RMatrix::zeros(1, 2));
}
