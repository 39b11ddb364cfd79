use linecm::canon::isomorphic;
use linecm::classify::{catalog, CatalogKind, CM_CATALOG_TEXT, GORENSTEIN_CATALOG_TEXT};
use linecm::harness::{
    connected_graphs_by_size, derive_catalog_cm, derive_catalog_gorenstein, dual_counts,
    line_complement_components_small,
};

#[test]
fn bundled_fixtures_match_the_derivation() {
    let cm = derive_catalog_cm().unwrap();
    assert_eq!(cm.to_text(), CM_CATALOG_TEXT);
    let gor = derive_catalog_gorenstein(&cm).unwrap();
    assert_eq!(gor.to_text(), GORENSTEIN_CATALOG_TEXT);
    assert!(cm.nine_vertex_additions.is_empty());
}

#[test]
fn cm_catalog_members() {
    let cm = &catalog(CatalogKind::Cm).graphs;
    assert_eq!(cm.len(), 7);
    for (i, a) in cm.iter().enumerate() {
        assert_eq!(a.max_degree(), 3);
        for b in &cm[i + 1..] {
            assert!(!isomorphic(a, b));
        }
    }
}

#[test]
fn gorenstein_members_have_small_complement_components() {
    let gor = &catalog(CatalogKind::Gorenstein).graphs;
    let cm = &catalog(CatalogKind::Cm).graphs;
    assert!(!gor.is_empty() && gor.len() <= cm.len());
    for g in gor {
        assert!(cm.iter().any(|c| isomorphic(c, g)));
        assert!(line_complement_components_small(g));
    }
}

#[test]
fn enumeration_counts() {
    let counts: Vec<usize> = connected_graphs_by_size(7).unwrap().iter().map(Vec::len).collect();
    assert_eq!(counts, [1, 1, 2, 6, 21, 112, 853]);
    for row in dual_counts(6).unwrap() {
        assert_eq!(row.vertex_extension, row.edge_augmentation, "n = {}", row.n);
    }
}
