//! The shipped corpus is canonical, valid, and index-stable.

use shiftlab_cli::examples::{bundled, CORPUS};
use shiftlab_cli::{canonical_json, TripleFile};

#[test]
fn corpus_files_are_canonical_and_round_trip() {
    for &(name, text) in &CORPUS {
        let file: TripleFile = serde_json::from_str(text).unwrap();
        assert_eq!(
            canonical_json(&file),
            text,
            "{name}.json is not in canonical form"
        );
        let reparsed: TripleFile = serde_json::from_str(&canonical_json(&file)).unwrap();
        assert_eq!(reparsed, file, "{name}.json round trip changed the value");
    }
}

#[test]
fn corpus_triples_validate_without_losing_symbols() {
    for &(name, _) in &CORPUS {
        let (file, triple) = bundled(name);
        assert_eq!(triple.name(), name);
        assert!(
            file.removed_symbols(&triple).is_empty(),
            "{name} lost symbols to essentialization"
        );
        // declaration order is the index order; reports depend on it
        assert_eq!(triple.graph().names(), file.symbols.as_slice());
        for (u, v) in &file.edges {
            let ui = triple.graph().index_of(u).unwrap();
            let vi = triple.graph().index_of(v).unwrap();
            assert!(triple.graph().has_edge(ui, vi), "{name} dropped edge {u}->{v}");
        }
        assert_eq!(triple.graph().edge_count(), file.edges.len());
        for (s, l) in &file.labels {
            let x = triple.graph().index_of(s).unwrap();
            assert_eq!(triple.label_name(x), l, "{name} relabeled {s}");
        }
    }
}

#[test]
fn corpus_shapes_match_their_specifications() {
    let shapes = [
        ("t1", 2, 3, 1, false),
        ("t2", 5, 12, 2, true),
        ("t3", 35, 50, 8, true),
        ("t4", 4, 8, 2, true),
        ("t5", 2, 3, 2, true),
    ];
    for (name, symbols, edges, letters, irreducible) in shapes {
        let (_, t) = bundled(name);
        assert_eq!(t.graph().len(), symbols, "{name} symbol count");
        assert_eq!(t.graph().edge_count(), edges, "{name} edge count");
        assert_eq!(t.alphabet().len(), letters, "{name} letter count");
        assert_eq!(t.graph().is_irreducible(), irreducible, "{name} irreducibility");
    }
}
