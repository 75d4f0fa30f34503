use proptest::prelude::*;
use purecomplex::clique::{
    intersection_data, is_clique_complex_by_skeleton, is_clique_complex_by_theorem,
    vertex_data_from_full_intersection_data,
};
use purecomplex::complex::*;

/// Arbitrary (not necessarily pure) complexes on labels `1..=8`.
fn complexes() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(1u32..=8, 1..=5), 1..=5)
        .prop_filter_map("facets must form an antichain", |fs| {
            SimplicialComplex::new(fs.into_iter().map(|f| f.into_iter().collect()).collect()).ok()
        })
}

fn symmetric(q: usize, max: u64) -> impl Strategy<Value = AdjacencyMatrix> {
    prop::collection::vec(0..=max, q * q).prop_map(move |cells| {
        let mut rows = vec![vec![0; q]; q];
        for i in 0..q {
            for j in i..q {
                rows[i][j] = cells[i * q + j];
                rows[j][i] = cells[i * q + j];
            }
        }
        AdjacencyMatrix::from_rows(rows).unwrap()
    })
}

proptest! {
    #[test]
    fn encodings_agree(k in complexes()) {
        let b = incidence_from_facets(&k);
        prop_assert!(is_realizable_incidence(b.rows()).unwrap().holds());
        prop_assert_eq!(facets_from_incidence(&b), k.normalized());
        let data = vertex_data_from_incidence(&b);
        prop_assert!(is_realizable_vertex_data(&data).holds());
        prop_assert_eq!(adjacency_from_vertex_data(&data).unwrap(), adjacency_from_incidence(&b));
        prop_assert_eq!(data.total() as usize, k.vertex_count());
    }

    #[test]
    fn realized_matrices_pass_and_are_found(k in complexes()) {
        let q = adjacency_from_complex(&k);
        prop_assert!(check_adjacency_inequalities(&q, None).passes());
        let witness = is_realizable_adjacency(&q, 5).unwrap();
        prop_assert!(witness.is_some());
        prop_assert_eq!(adjacency_from_vertex_data(&witness.unwrap()).unwrap(), q);
    }

    #[test]
    fn search_witnesses_are_sound(q in (1usize..=4).prop_flat_map(|q| symmetric(q, 3))) {
        if let Some(w) = is_realizable_adjacency(&q, 4).unwrap() {
            prop_assert!(is_realizable_vertex_data(&w).holds());
            prop_assert_eq!(adjacency_from_vertex_data(&w).unwrap(), q.clone());
            prop_assert!(check_adjacency_inequalities(&q, None).passes());
        }
    }

    #[test]
    fn clique_tests_agree(k in complexes()) {
        prop_assert_eq!(is_clique_complex_by_theorem(&k).holds(), is_clique_complex_by_skeleton(&k));
    }

    #[test]
    fn intersection_data_inverts(k in complexes()) {
        let data = intersection_data(&k, k.facet_count()).unwrap();
        prop_assert_eq!(vertex_data_from_full_intersection_data(&data).unwrap(), vertex_data_from_complex(&k));
    }

    #[test]
    fn json_round_trips(k in complexes()) {
        let text = serde_json::to_string(&k).unwrap();
        prop_assert_eq!(serde_json::from_str::<SimplicialComplex>(&text).unwrap(), k.clone());
        let data = vertex_data_from_complex(&k);
        let text = serde_json::to_string(&data).unwrap();
        prop_assert_eq!(serde_json::from_str::<VertexData>(&text).unwrap(), data);
        let full = intersection_data(&k, k.facet_count()).unwrap();
        let text = serde_json::to_string(&full).unwrap();
        prop_assert_eq!(serde_json::from_str::<purecomplex::clique::IntersectionData>(&text).unwrap(), full);
    }
}
