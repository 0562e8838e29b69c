use chaingeo::chains::{
    beta, beta_preimage, canonical_cm, chain_stabilizer_m, expected_dims,
    generic_intersection_dims, in_domain, intersect_chains, intersection_index, lift_circle,
    oo_length, pair_in_image, parametrize_tk, project_chain, s_map, standard_chain,
    triple_span_generic, valid_indices, vinf_index, w_chart_at, USubspace, WBase,
};
use chaingeo::exactnum::{GaussianRational, RMatrix};
use chaingeo::heisenberg::from_chart;
use chaingeo::hermitian::{HermSpace, Subspace};
use chaingeo::sampler::{SampleConfig, Sampler};
use chaingeo::shilov::{chain_through, member, transverse, ShilovPoint};
use chaingeo::Error;

const CONFIGS: [(usize, usize); 7] = [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)];

fn space(m: usize, n: usize) -> HermSpace {
    HermSpace::new(m, n).unwrap()
}

#[test]
fn standard_chains_have_their_index() {
    for (m, n) in CONFIGS {
        let s = space(m, n);
        for k in valid_indices(s) {
            let t = standard_chain(s, k).unwrap();
            assert_eq!(intersection_index(&ShilovPoint::v_inf(s), &t), k);
            assert!(member(&ShilovPoint::v_0(s), &t));
        }
        if 2 * m > n {
            assert!(matches!(
                standard_chain(s, 2 * m - n - 1),
                Err(Error::InvalidRegime(_))
            ));
        }
    }
}

#[test]
fn parametrized_points_lie_on_the_chain() {
    let s = space(3, 5);
    let mut rng = Sampler::new(&SampleConfig::new(3, 5, 8));
    for k in valid_indices(s) {
        let t = standard_chain(s, k).unwrap();
        for _ in 0..5 {
            let e = rng.matrix(3 - k, k);
            let xu = rng.unitary(3 - k);
            let c = rng.anti_hermitian(k);
            assert!(member(&parametrize_tk(s, k, &e, &xu, &c).unwrap(), &t));
        }
    }
    // k = m: the chain is vertical, points are (0, C)
    let t = standard_chain(s, 3).unwrap();
    let c = rng.anti_hermitian(3);
    let p = parametrize_tk(s, 3, &RMatrix::zeros(0, 3), &RMatrix::zeros(0, 0), &c).unwrap();
    assert!(member(&p, &t));
}

#[test]
fn projection_and_lift() {
    let s = space(2, 3);
    assert!(matches!(
        project_chain(&standard_chain(s, 2).unwrap()),
        Err(Error::VerticalChain)
    ));
    let t = standard_chain(s, 1).unwrap();
    let c = project_chain(&t).unwrap();
    assert_eq!(c.k, 1);
    let v0 = ShilovPoint::v_0(s);
    assert_eq!(lift_circle(&c, &v0).unwrap(), t);
}

#[test]
fn central_stabilizers_of_standard_chains() {
    for (m, n) in [(2, 3), (3, 4), (3, 5)] {
        let s = space(m, n);
        for k in valid_indices(s) {
            let mt = chain_stabilizer_m(&standard_chain(s, k).unwrap());
            assert_eq!(mt, USubspace::e_k(m, k));
            assert_eq!(mt.dim(), k * k);
        }
    }
}

#[test]
fn s_map_examples() {
    let m = 3;
    let id = RMatrix::identity(m);
    for k in 0..=m {
        let zk = id.col_block(0, k);
        assert_eq!(s_map(&zk, &zk), USubspace::e_k(m, k));
    }
    assert_eq!(s_map(&RMatrix::zeros(m, 0), &id).dim(), 0);
    assert_eq!(s_map(&id, &id).dim(), m * m);
}

#[test]
fn chain_pair_image() {
    let two = RMatrix::identity(1).scale(&GaussianRational::from_ints(2, 0));
    let a0 = RMatrix::from_int_rows(&[&[1, 1]]);
    let a1 = a0.clone();
    // A_1 A_0* = 2 Id, so A_1 A_0* - Id = Id is unitary
    assert_eq!(&a1 * &a0.adjoint(), two);
    assert!(pair_in_image(&a0, &a1));
    assert!(!pair_in_image(
        &a0,
        &a1.scale(&GaussianRational::from_ints(3, 0))
    ));

    let s = space(2, 3);
    let t = w_chart_at(s, &WBase::V0, &RMatrix::zeros(1, 2)).unwrap();
    let want = Subspace::span(&[
        ShilovPoint::v_0(s).subspace(),
        ShilovPoint::v_inf(s).subspace(),
    ])
    .unwrap();
    assert_eq!(t.subspace(), &want);
}

#[test]
fn beta_preimages_round_trip() {
    for (m, n) in [(2, 3), (3, 4)] {
        let s = space(m, n);
        let k = 2 * m - n;
        let mut rng = Sampler::new(&SampleConfig::new(m, n, 21));
        for _ in 0..5 {
            let plus = rng.signs(m);
            let (v0, v1) = (rng.subspace_basis(m, k), rng.subspace_basis(m, k));
            let pre = beta_preimage(s, &plus, &v0, &v1, &mut rng).unwrap();
            assert!(in_domain(&pre.point, &plus));
            assert_eq!(
                beta(&pre.point, &plus).unwrap(),
                (canonical_cm(&v0), canonical_cm(&v1))
            );
        }
    }
}

#[test]
fn generic_intersections() {
    assert_eq!(oo_length(1, 2), Some(3));
    assert_eq!(expected_dims(1, 2, 2), vec![2, 1]);
    assert_eq!(expected_dims(2, 3, 4), vec![4, 3, 2, 2]);
    assert_eq!(oo_length(2, 2), None);

    let s = space(2, 3);
    let mut rng = Sampler::new(&SampleConfig::new(2, 3, 17));
    let z = rng.chart_point();
    let mut xs = Vec::new();
    while xs.len() < 4 {
        let x = rng.chart_point();
        if transverse(&x, &z) {
            xs.push(x);
        }
    }
    assert_eq!(
        generic_intersection_dims(&z, &xs).unwrap(),
        vec![4, 3, 2, 2]
    );
    let ts: Vec<_> = xs.iter().map(|x| chain_through(&z, x).unwrap()).collect();
    assert_eq!(intersect_chains(&ts).unwrap(), z);
    assert!(matches!(
        intersect_chains(&ts[..1]),
        Err(Error::NoCommonPoint)
    ));

    let a = ShilovPoint::v_0(s);
    assert!(matches!(
        triple_span_generic(&a, &a, &a),
        Err(Error::InvalidRegime(_))
    ));
}

#[test]
fn wide_triples_span_3m() {
    let s = space(2, 4);
    let mut rng = Sampler::new(&SampleConfig::new(2, 4, 1));
    let (a, b, w) = (rng.chart_point(), rng.chart_point(), rng.chart_point());
    assert!(triple_span_generic(&a, &b, &w).unwrap());
    let t = standard_chain(s, 1).unwrap();
    assert_eq!(vinf_index(&t), 1);
    let p = from_chart(s, &chaingeo::chains::base_point(s, 1).unwrap()).unwrap();
    assert!(member(&p, &t));
}
