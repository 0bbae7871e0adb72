use std::fs;

use lpi_groups::corpus::*;
use lpi_groups::Error;

#[test]
fn bundled_corpus_is_sorted_and_large_enough() {
    let c = bundled_corpus(200).unwrap();
    assert!(c.len() >= 60);
    assert!(c.windows(2).all(|w| (w[0].group.order(), &w[0].name) < (w[1].group.order(), &w[1].name)));
    for name in ["S4", "A5", "SL2_3", "Q8", "D8", "C2e4", "S3xS3xC2", "PSL2_7"] {
        assert!(c.iter().any(|e| e.name == name), "{name} missing");
    }
    let specs = bundled_specs(200).unwrap();
    assert_eq!(specs.len(), c.len());
    assert!(specs.iter().zip(&c).all(|(s, e)| s.name == e.name && s.order == e.group.order()));
}

#[test]
fn generate_then_load_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = generate_corpus(30, dir.path(), None).unwrap();
    let loaded = load_corpus(dir.path()).unwrap();
    let bundled = bundled_corpus(30).unwrap();
    assert_eq!(manifest.records.len(), bundled.len());
    assert_eq!(loaded.len(), bundled.len());
    for (a, b) in loaded.iter().zip(&bundled) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.group, b.group);
    }
    let text = fs::read_to_string(dir.path().join(MANIFEST_FILE)).unwrap();
    assert_eq!(CorpusManifest::parse(&text).unwrap(), manifest);
}

#[test]
fn imported_files_join_the_corpus() {
    let src = tempfile::tempdir().unwrap();
    fs::write(src.path().join("v.grp"), "name: Klein\ndegree: 4\ngen: (1,2)(3,4)\ngen: (1,3)(2,4)\n").unwrap();
    let out = tempfile::tempdir().unwrap();
    let manifest = generate_corpus(6, out.path(), Some(src.path())).unwrap();
    let rec = manifest.records.iter().find(|r| r.name == "Klein").unwrap();
    assert_eq!(rec.source, "file");
    assert_eq!(rec.order, 4);
    let loaded = load_corpus(out.path()).unwrap();
    assert_eq!(loaded.last().unwrap().source, Source::File);
}

#[test]
fn corrupted_file_is_named() {
    let dir = tempfile::tempdir().unwrap();
    generate_corpus(8, dir.path(), None).unwrap();
    fs::write(dir.path().join("S3.grp"), "name: S3\ndegree: 3\ngen: (1,2,\n").unwrap();
    let err = load_corpus(dir.path()).unwrap_err();
    assert!(matches!(err, Error::File { .. }));
    assert!(err.to_string().contains("S3.grp"), "{err}");
}

#[test]
fn manifest_order_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    generate_corpus(8, dir.path(), None).unwrap();
    fs::write(dir.path().join("C4.grp"), "name: C4\ndegree: 4\ngen: (1,2)\n").unwrap();
    let err = load_corpus(dir.path()).unwrap_err().to_string();
    assert!(err.contains("C4.grp") && err.contains("order"), "{err}");
}

#[test]
fn directories_without_manifest_read_every_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("b.grp"), "name: B\ndegree: 3\ngen: (1,2,3)\n").unwrap();
    fs::write(dir.path().join("a.grp"), "name: A\ndegree: 2\ngen: (1,2)\n").unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let c = load_corpus(dir.path()).unwrap();
    assert_eq!(c.iter().map(|e| e.name.as_str()).collect::<Vec<_>>(), ["A", "B"]);
    assert!(load_corpus(tempfile::tempdir().unwrap().path()).unwrap().is_empty());
}

#[test]
fn duplicate_manifest_names_are_rejected() {
    let text = "S3\t6\tconstructed\tS3.grp\nS3\t6\tconstructed\tS3b.grp\n";
    assert!(CorpusManifest::parse(text).is_err());
    assert!(generate_corpus(2001, tempfile::tempdir().unwrap().path(), None).is_err());
}
