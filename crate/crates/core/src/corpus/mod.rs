//! Group corpora: built-in families, bundled fixtures, files on disk, and
//! the manifest that indexes them.

pub mod constructors;
pub mod format;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::group::Group;

pub use constructors::*;
pub use format::{parse_cycles, parse_generators, parse_group, parse_group_file, GroupFile};

/// File name of the manifest inside a corpus directory.
pub const MANIFEST_FILE: &str = "manifest.txt";

/// Hand-written fixtures compiled into the crate.
pub const FIXTURES: &[(&str, &str)] = &[
    ("AGL1_7", include_str!("../../fixtures/AGL1_7.grp")),
    ("AGL1_8", include_str!("../../fixtures/AGL1_8.grp")),
    ("AGL1_9", include_str!("../../fixtures/AGL1_9.grp")),
    ("AGammaL1_8", include_str!("../../fixtures/AGammaL1_8.grp")),
    ("BinOct", include_str!("../../fixtures/BinOct.grp")),
    ("C2e4_C3", include_str!("../../fixtures/C2e4_C3.grp")),
    ("C2e4_C5", include_str!("../../fixtures/C2e4_C5.grp")),
    ("C2wrC3", include_str!("../../fixtures/C2wrC3.grp")),
    ("C3_C8", include_str!("../../fixtures/C3_C8.grp")),
    ("C3sq_C2", include_str!("../../fixtures/C3sq_C2.grp")),
    ("C3sq_C4", include_str!("../../fixtures/C3sq_C4.grp")),
    ("C3sq_Q8", include_str!("../../fixtures/C3sq_Q8.grp")),
    ("C3wrC2", include_str!("../../fixtures/C3wrC2.grp")),
    ("C4_C4", include_str!("../../fixtures/C4_C4.grp")),
    ("C4wrC2", include_str!("../../fixtures/C4wrC2.grp")),
    ("C5_C4", include_str!("../../fixtures/C5_C4.grp")),
    ("Dic12", include_str!("../../fixtures/Dic12.grp")),
    ("F20", include_str!("../../fixtures/F20.grp")),
    ("F21", include_str!("../../fixtures/F21.grp")),
    ("GL2_3", include_str!("../../fixtures/GL2_3.grp")),
    ("M16", include_str!("../../fixtures/M16.grp")),
    ("PSL2_7", include_str!("../../fixtures/PSL2_7.grp")),
    ("Pauli", include_str!("../../fixtures/Pauli.grp")),
    ("S3wrC2", include_str!("../../fixtures/S3wrC2.grp")),
    ("SD16", include_str!("../../fixtures/SD16.grp")),
    ("SL2_3", include_str!("../../fixtures/SL2_3.grp")),
];

/// A bundled fixture by name.
pub fn fixture(name: &str) -> Result<Group> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::InvalidParameter(format!("no fixture named `{name}`")))?;
    Ok(parse_group(text)?.1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Constructed,
    File,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Constructed => "constructed",
            Source::File => "file",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: Group,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestRecord {
    pub name: String,
    pub order: u64,
    pub source: String,
    pub path: PathBuf,
}

/// Tab-separated `name order source path`, one record per line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusManifest {
    pub records: Vec<ManifestRecord>,
}

impl CorpusManifest {
    pub fn emit(&self) -> String {
        let mut s = String::from("# name\torder\tsource\tpath\n");
        for r in &self.records {
            s.push_str(&format!("{}\t{}\t{}\t{}\n", r.name, r.order, r.source, r.path.display()));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut records = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let bad = |column: usize, message: &str| Error::Parse {
                line: ln + 1,
                column,
                message: message.to_string(),
            };
            if fields.len() != 4 {
                return Err(bad(1, "expected 4 tab-separated fields"));
            }
            let order = fields[1]
                .parse()
                .map_err(|_| bad(fields[0].len() + 2, "invalid order"))?;
            records.push(ManifestRecord {
                name: fields[0].to_string(),
                order,
                source: fields[2].to_string(),
                path: PathBuf::from(fields[3]),
            });
        }
        let mut names: Vec<&str> = records.iter().map(|r| r.name.as_str()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!("duplicate corpus name `{}`", w[0])));
        }
        Ok(CorpusManifest { records })
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

type Build = Box<dyn Fn() -> Result<Group> + Send + Sync>;

/// A corpus member whose group is built on demand.
pub struct BundledSpec {
    pub name: String,
    pub order: u64,
    build: Build,
}

impl BundledSpec {
    fn lazy(name: String, order: u64, build: impl Fn() -> Result<Group> + Send + Sync + 'static) -> Self {
        BundledSpec {
            name,
            order,
            build: Box::new(build),
        }
    }

    fn ready(name: String, g: Group) -> Self {
        BundledSpec::lazy(name, g.order(), move || Ok(g.clone()))
    }

    pub fn build(&self) -> Result<CorpusEntry> {
        let group = (self.build)()?;
        debug_assert_eq!(group.order(), self.order);
        Ok(CorpusEntry {
            name: self.name.clone(),
            group,
            source: Source::Constructed,
        })
    }
}

/// Names and orders of the built-in families and fixtures with order at
/// most `max_order`, sorted by order and then name. Nothing large is built.
pub fn bundled_specs(max_order: u64) -> Result<Vec<BundledSpec>> {
    let mut out: Vec<BundledSpec> = Vec::new();
    let mut push = |spec: BundledSpec| {
        if spec.order <= max_order && !out.iter().any(|s| s.name == spec.name) {
            out.push(spec);
        }
    };
    let mut n = 2;
    while factorial(n) <= max_order {
        push(BundledSpec::lazy(format!("S{n}"), factorial(n), move || symmetric(n as usize)));
        n += 1;
    }
    let mut n = 4;
    while factorial(n) / 2 <= max_order {
        push(BundledSpec::lazy(format!("A{n}"), factorial(n) / 2, move || alternating(n as usize)));
        n += 1;
    }
    for n in 1..=max_order {
        push(BundledSpec::lazy(format!("C{n}"), n, move || cyclic(n as usize)));
    }
    for order in (4..=max_order).step_by(2) {
        push(BundledSpec::lazy(format!("D{order}"), order, move || dihedral(order as usize)));
    }
    let mut q = 8;
    while q <= max_order {
        push(BundledSpec::lazy(format!("Q{q}"), q, move || generalized_quaternion(q as usize)));
        q *= 2;
    }
    // factors for direct products
    let mut bases: Vec<(String, Group)> = vec![
        ("C2".into(), cyclic(2)?),
        ("C3".into(), cyclic(3)?),
        ("C4".into(), cyclic(4)?),
        ("C5".into(), cyclic(5)?),
        ("S3".into(), symmetric(3)?),
        ("D8".into(), dihedral(8)?),
        ("Q8".into(), generalized_quaternion(8)?),
        ("A4".into(), alternating(4)?),
        ("D10".into(), dihedral(10)?),
        ("Dic12".into(), fixture("Dic12")?),
        ("S4".into(), symmetric(4)?),
        ("SL2_3".into(), fixture("SL2_3")?),
        ("A5".into(), alternating(5)?),
    ];
    bases.retain(|(_, g)| g.order() * 2 <= max_order);
    for i in 0..bases.len() {
        for j in 0..=i {
            let (a, b) = (bases[j].clone(), bases[i].clone());
            let order = a.1.order() * b.1.order();
            push(BundledSpec::lazy(format!("{}x{}", a.0, b.0), order, move || {
                direct_product(&a.1, &b.1)
            }));
        }
    }
    for (p, k) in [(2usize, 3u32), (2, 4), (2, 5), (3, 3)] {
        push(BundledSpec::lazy(format!("C{p}e{k}"), (p as u64).pow(k), move || {
            elementary_abelian(p, k as usize)
        }));
    }
    if max_order >= 16 {
        let c2 = cyclic(2)?;
        let c2c2 = direct_product(&c2, &c2)?;
        push(BundledSpec::ready("C2xC2xC4".into(), direct_product(&c2c2, &cyclic(4)?)?));
        push(BundledSpec::ready("C2xC2xS3".into(), direct_product(&c2c2, &symmetric(3)?)?));
        push(BundledSpec::ready("C2xC2xQ8".into(), direct_product(&c2c2, &generalized_quaternion(8)?)?));
        let s3 = symmetric(3)?;
        push(BundledSpec::ready("S3xS3xC2".into(), direct_product(&direct_product(&s3, &s3)?, &c2)?));
    }
    for (name, text) in FIXTURES {
        push(BundledSpec::ready(name.to_string(), parse_group(text)?.1));
    }
    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.name.cmp(&b.name)));
    Ok(out)
}

/// Built-in families and fixtures with order at most `max_order`, sorted by
/// order and then name.
pub fn bundled_corpus(max_order: u64) -> Result<Vec<CorpusEntry>> {
    bundled_specs(max_order)?.iter().map(BundledSpec::build).collect()
}

/// Reads every `*.grp` file of `dir`, sorted by file name.
pub fn read_group_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::from(e).in_file(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| Error::from(e).in_file(p))?;
            let (name, group) = parse_group(&text).map_err(|e| e.in_file(p))?;
            Ok(CorpusEntry {
                name,
                group,
                source: Source::File,
            })
        })
        .collect()
}

fn file_name_for(name: &str) -> String {
    let safe: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect();
    format!("{safe}.grp")
}

/// Writes the bundled corpus plus any importable files to `out_dir`.
pub fn generate_corpus(
    max_order: u64,
    out_dir: &Path,
    import_dir: Option<&Path>,
) -> Result<CorpusManifest> {
    if max_order > 2000 {
        return Err(Error::InvalidParameter(format!(
            "max_order {max_order} exceeds 2000"
        )));
    }
    let specs = bundled_specs(max_order)?;
    let mut imported = Vec::new();
    if let Some(dir) = import_dir {
        for e in read_group_dir(dir)? {
            if e.group.order() <= max_order {
                imported.push(e);
            }
        }
    }
    fs::create_dir_all(out_dir).map_err(|e| Error::from(e).in_file(out_dir))?;
    let mut manifest = CorpusManifest::default();
    let entries = specs
        .iter()
        .map(BundledSpec::build)
        .chain(imported.into_iter().map(Ok));
    for e in entries {
        let e = e?;
        if manifest.records.iter().any(|r| r.name == e.name) {
            return Err(Error::InvalidParameter(format!("duplicate corpus name `{}`", e.name)));
        }
        let file = PathBuf::from(file_name_for(&e.name));
        let path = out_dir.join(&file);
        fs::write(&path, GroupFile::from_group(&e.name, &e.group).emit())
            .map_err(|err| Error::from(err).in_file(&path))?;
        manifest.records.push(ManifestRecord {
            name: e.name.clone(),
            order: e.group.order(),
            source: e.source.to_string(),
            path: file,
        });
    }
    let mpath = out_dir.join(MANIFEST_FILE);
    fs::write(&mpath, manifest.emit()).map_err(|e| Error::from(e).in_file(&mpath))?;
    Ok(manifest)
}

/// Loads a corpus directory: manifest order when a manifest exists
/// (orders are verified against it), otherwise every `*.grp` file.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let mpath = dir.join(MANIFEST_FILE);
    if !mpath.exists() {
        return read_group_dir(dir);
    }
    let text = fs::read_to_string(&mpath).map_err(|e| Error::from(e).in_file(&mpath))?;
    let manifest = CorpusManifest::parse(&text).map_err(|e| e.in_file(&mpath))?;
    let mut out = Vec::new();
    for r in manifest.records {
        let path = dir.join(&r.path);
        let text = fs::read_to_string(&path).map_err(|e| Error::from(e).in_file(&path))?;
        let (_, group) = parse_group(&text).map_err(|e| e.in_file(&path))?;
        if group.order() != r.order {
            return Err(Error::InvalidParameter(format!(
                "manifest says order {} but the file builds order {}",
                r.order,
                group.order()
            ))
            .in_file(&path));
        }
        out.push(CorpusEntry {
            name: r.name,
            group,
            source: if r.source == "file" { Source::File } else { Source::Constructed },
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_with_expected_orders() {
        let expected = [
            ("AGL1_7", 42),
            ("AGL1_8", 56),
            ("AGL1_9", 72),
            ("AGammaL1_8", 168),
            ("BinOct", 48),
            ("C2e4_C3", 48),
            ("C2e4_C5", 80),
            ("C2wrC3", 24),
            ("C3_C8", 24),
            ("C3sq_C2", 18),
            ("C3sq_C4", 36),
            ("C3sq_Q8", 72),
            ("C3wrC2", 18),
            ("C4_C4", 16),
            ("C4wrC2", 32),
            ("C5_C4", 20),
            ("Dic12", 12),
            ("F20", 20),
            ("F21", 21),
            ("GL2_3", 48),
            ("M16", 16),
            ("PSL2_7", 168),
            ("Pauli", 16),
            ("S3wrC2", 72),
            ("SD16", 16),
            ("SL2_3", 24),
        ];
        assert_eq!(expected.len(), FIXTURES.len());
        for (name, order) in expected {
            assert_eq!(fixture(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn corpus_membership_by_order() {
        let names = |m| -> Vec<String> { bundled_corpus(m).unwrap().into_iter().map(|e| e.name).collect() };
        let small = names(24);
        for n in ["S4", "SL2_3", "A4", "D8", "Q8"] {
            assert!(small.iter().any(|x| x == n), "{n} missing");
        }
        assert!(!names(7).iter().any(|x| x == "Q8"));
    }

    #[test]
    fn generate_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = generate_corpus(24, dir.path(), None).unwrap();
        let loaded = load_corpus(dir.path()).unwrap();
        assert_eq!(loaded.len(), manifest.records.len());
        for (r, e) in manifest.records.iter().zip(&loaded) {
            assert_eq!(r.name, e.name);
            assert_eq!(r.order, e.group.order());
        }
        let again = CorpusManifest::parse(&manifest.emit()).unwrap();
        assert_eq!(again, manifest);
    }

    #[test]
    fn import_directory_is_included() {
        let import = tempfile::tempdir().unwrap();
        fs::write(import.path().join("x.grp"), "name: Imported\ndegree: 3\ngen: (1,2,3)\n").unwrap();
        let out = tempfile::tempdir().unwrap();
        let m = generate_corpus(6, out.path(), Some(import.path())).unwrap();
        let rec = m.records.iter().find(|r| r.name == "Imported").unwrap();
        assert_eq!(rec.source, "file");
        assert_eq!(rec.order, 3);
    }

    #[test]
    fn unwritable_directory_fails() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "x").unwrap();
        assert!(generate_corpus(6, &blocker.join("sub"), None).is_err());
    }
}
