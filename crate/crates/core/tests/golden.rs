mod common;

use common::{check_golden, golden_name, render, svg_goldens};

#[test]
fn svg_matches_golden_files() {
    for (kind, d, k) in svg_goldens() {
        check_golden(&golden_name(&kind, d, k, "svg"), &render(&kind, d, k, "svg")).unwrap();
    }
}

#[test]
fn csv_matches_golden_files() {
    for kind in ["map", "state"] {
        check_golden(&golden_name(kind, 4, 3, "csv"), &render(kind, 4, 3, "csv")).unwrap();
    }
    check_golden(&golden_name("state", 3, 1, "csv"), &render("state", 3, 1, "csv")).unwrap();
}

#[test]
fn json_matches_golden_files() {
    for kind in ["map", "state"] {
        check_golden(&golden_name(kind, 4, 3, "json"), &render(kind, 4, 3, "json")).unwrap();
    }
}

#[test]
fn svg_is_well_formed() {
    for (kind, d, k) in svg_goldens() {
        let svg = render(&kind, d, k, "svg");
        let doc = roxmltree::Document::parse(&svg).unwrap_or_else(|e| panic!("{kind} {d} {k}: {e}"));
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        let count = |class: &str| root.descendants().filter(|n| n.attribute("class") == Some(class)).count();
        let b = common::boundary(&kind, d, k);
        assert_eq!(count("segment"), b.segment_count());
        assert_eq!(count("arc"), b.arc_count());
        assert_eq!(count("vertex"), b.vertices.len());
        assert_eq!(count("region"), 1);
        assert_eq!(count("axis"), 2);
    }
}
