use surface_cluster::mutation::{canonical_key, make_quiver, QuiverSpec};
use surface_cluster::tagged::exchange_graph_bfs;
use surface_cluster::trimap::ideal_flip_bfs;
use surface_cluster::{
    initial_triangulation, recover_genus_punctures, tag_plain, validate_surface, Error, IdealTriangulation, MarkedSurface,
    SurfaceDescriptor, TaggedTriangulation,
};

fn desc(g: usize, b: &[usize], p: usize) -> SurfaceDescriptor {
    SurfaceDescriptor { genus: g, boundary: b.to_vec(), punctures: p }
}

#[test]
fn exclusions_are_named() {
    for (d, needle) in [
        (desc(0, &[], 3), "thrice-punctured sphere"),
        (desc(0, &[3], 0), "unpunctured triangle"),
        (desc(0, &[1], 1), "once-punctured monogon"),
        (desc(0, &[], 1), "sphere"),
    ] {
        match validate_surface(&d) {
            Err(Error::ExcludedSurface(reason)) => assert!(reason.contains(needle), "{reason}"),
            other => panic!("{d:?}: {other:?}"),
        }
    }
    assert_eq!(validate_surface(&desc(0, &[], 0)), Err(Error::EmptyMarking));
    assert_eq!(validate_surface(&desc(1, &[0], 0)), Err(Error::EmptyMarking));
    assert_eq!(validate_surface(&desc(0, &[4], 1)).unwrap().rank(), 4);
}

#[test]
fn closed_surfaces_from_size_and_rank() {
    assert_eq!(recover_genus_punctures(3, 2).unwrap(), (1, 1));
    assert_eq!(recover_genus_punctures(12, 6).unwrap(), (0, 6));
    assert!(matches!(recover_genus_punctures(3, 3), Err(Error::NotRealizable { .. })));
}

#[test]
fn exceptional_four_punctured_sphere_is_reached() {
    let s = MarkedSurface::new(0, &[], 4).unwrap();
    let ex = ideal_flip_bfs(&initial_triangulation(&s), 2000);
    let octahedron = canonical_key(&make_quiver(&QuiverSpec::Octahedron).unwrap()).unwrap();
    let t = ex
        .states
        .iter()
        .find(|t| t.self_folded_triangles().len() == 3)
        .expect("a triangulation with three self-folded triangles");
    assert_eq!(canonical_key(&t.signed_adjacency()).unwrap(), octahedron);
}

#[test]
fn every_state_has_rank_many_arcs() {
    for (g, b, p) in [(0, vec![3, 1], 2), (1, vec![], 2), (2, vec![1], 0)] {
        let s = MarkedSurface::new(g, &b, p).unwrap();
        let ex = exchange_graph_bfs(&tag_plain(&initial_triangulation(&s)), 100);
        for t in &ex.states {
            assert_eq!(t.rank(), s.rank());
            assert_eq!(t.base().surface(), &s);
        }
        assert!(ex.out_degree.iter().all(|&d| d == s.rank()));
    }
}

#[test]
fn json_round_trips() {
    let s = MarkedSurface::new(1, &[2], 1).unwrap();
    let t = initial_triangulation(&s);
    let back: IdealTriangulation = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
    assert_eq!(back.canonical_code(), t.canonical_code());
    let tagged = tag_plain(&t).flip(0).unwrap();
    let back: TaggedTriangulation = serde_json::from_str(&serde_json::to_string(&tagged).unwrap()).unwrap();
    assert_eq!(back.labeled_code(), tagged.labeled_code());
}
