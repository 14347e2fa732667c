//! Claim data model: sources, objects and the values they claim.
//!
//! A [`ClaimDataset`] is built once from (source, object, value) triples and is
//! immutable afterwards. Every identifier list is kept in ascending
//! lexicographic order, and every index below refers to positions in those
//! lists, so iteration order never depends on hashing.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Separator used inside canonical joint values. Forbidden in value fields.
pub const JOINT_DELIMITER: char = '|';

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "single")]
    SingleValued,
    #[serde(rename = "multi")]
    MultiValued,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::SingleValued => "single",
            Mode::MultiValued => "multi",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Mode::SingleValued),
            "multi" => Ok(Mode::MultiValued),
            other => Err(Error::Config(format!(
                "unknown mode `{other}` (expected `single` or `multi`)"
            ))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One claim in index form. `value` indexes the object's value list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Claim {
    pub source: usize,
    pub object: usize,
    pub value: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub sources: usize,
    pub objects: usize,
    /// Sum over objects of the number of distinct claimed values.
    pub values: usize,
    pub claims: usize,
}

#[derive(Clone, Debug)]
pub struct ClaimDataset {
    mode: Mode,
    sources: Vec<String>,
    objects: Vec<String>,
    values: Vec<Vec<String>>,
    // sorted by (source, object, value)
    claims: Vec<Claim>,
    source_ranges: Vec<(usize, usize)>,
    source_objects: Vec<Vec<usize>>,
    object_sources: Vec<Vec<usize>>,
    value_sources: Vec<Vec<Vec<usize>>>,
    rows_read: usize,
    duplicates: usize,
}

impl PartialEq for ClaimDataset {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode
            && self.sources == other.sources
            && self.objects == other.objects
            && self.values == other.values
            && self.claims == other.claims
            && self.source_ranges == other.source_ranges
            && self.source_objects == other.source_objects
            && self.object_sources == other.object_sources
            && self.value_sources == other.value_sources
    }
}

fn check_field(field: &str, line: u64, what: &str, allow_delimiter: bool) -> Result<()> {
    if field.is_empty() {
        return Err(Error::Parse {
            line,
            message: format!("empty {what} field"),
        });
    }
    if !allow_delimiter && field.contains(JOINT_DELIMITER) {
        return Err(Error::Parse {
            line,
            message: format!(
                "{what} field `{field}` contains reserved character `{JOINT_DELIMITER}`"
            ),
        });
    }
    Ok(())
}

fn position(sorted: &[String], key: &str) -> Option<usize> {
    sorted.binary_search_by(|x| x.as_str().cmp(key)).ok()
}

impl ClaimDataset {
    /// Builds a dataset from raw triples. Fields are trimmed; duplicate
    /// triples are collapsed. Errors report the 1-based triple position.
    pub fn from_triples<I, S>(triples: I, mode: Mode) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let rows = triples
            .into_iter()
            .enumerate()
            .map(|(i, (s, o, v))| {
                (
                    i as u64 + 1,
                    s.as_ref().trim().to_string(),
                    o.as_ref().trim().to_string(),
                    v.as_ref().trim().to_string(),
                )
            })
            .collect();
        Self::build(rows, mode, false)
    }

    /// `joint` admits joint values, which carry the reserved delimiter.
    fn build(rows: Vec<(u64, String, String, String)>, mode: Mode, joint: bool) -> Result<Self> {
        let rows_read = rows.len();
        let mut unique: BTreeSet<(String, String, String)> = BTreeSet::new();
        for (line, s, o, v) in rows {
            check_field(&s, line, "source", false)?;
            check_field(&o, line, "object", false)?;
            check_field(&v, line, "value", joint)?;
            unique.insert((s, o, v));
        }
        let duplicates = rows_read - unique.len();

        let sources: Vec<String> = unique
            .iter()
            .map(|t| t.0.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut per_object: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for (_, o, v) in &unique {
            per_object.entry(o).or_default().insert(v);
        }
        let objects: Vec<String> = per_object.keys().map(|o| o.to_string()).collect();
        let values: Vec<Vec<String>> = per_object
            .values()
            .map(|vs| vs.iter().map(|v| v.to_string()).collect())
            .collect();

        let mut claims: Vec<Claim> = unique
            .iter()
            .map(|(s, o, v)| {
                let object = position(&objects, o).expect("object indexed");
                Claim {
                    source: position(&sources, s).expect("source indexed"),
                    object,
                    value: position(&values[object], v).expect("value indexed"),
                }
            })
            .collect();
        claims.sort_unstable();

        if mode == Mode::SingleValued {
            if let Some(w) = claims
                .windows(2)
                .find(|w| w[0].source == w[1].source && w[0].object == w[1].object)
            {
                return Err(Error::Mode {
                    source_id: sources[w[0].source].clone(),
                    object: objects[w[0].object].clone(),
                });
            }
        }

        let mut dataset = ClaimDataset {
            mode,
            sources,
            objects,
            values,
            claims,
            source_ranges: Vec::new(),
            source_objects: Vec::new(),
            object_sources: Vec::new(),
            value_sources: Vec::new(),
            rows_read,
            duplicates,
        };
        dataset.index();
        Ok(dataset)
    }

    fn index(&mut self) {
        let n_sources = self.sources.len();
        self.source_ranges = vec![(0, 0); n_sources];
        self.source_objects = vec![Vec::new(); n_sources];
        self.object_sources = vec![Vec::new(); self.objects.len()];
        self.value_sources = self
            .values
            .iter()
            .map(|vs| vec![Vec::new(); vs.len()])
            .collect();

        let mut start = 0;
        while start < self.claims.len() {
            let s = self.claims[start].source;
            let mut end = start;
            while end < self.claims.len() && self.claims[end].source == s {
                end += 1;
            }
            self.source_ranges[s] = (start, end);
            start = end;
        }
        // claims are sorted by source first, so every per-object and
        // per-value list below ends up sorted by source index
        for c in &self.claims {
            let objs = &mut self.source_objects[c.source];
            if objs.last() != Some(&c.object) {
                objs.push(c.object);
                self.object_sources[c.object].push(c.source);
            }
            self.value_sources[c.object][c.value].push(c.source);
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn sources(&self) -> &[String] {
        &self.sources
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    /// V_o: distinct values claimed on `object`, ascending.
    pub fn values(&self, object: usize) -> &[String] {
        &self.values[object]
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    /// V_s: every claim made by `source`, ordered by object then value.
    pub fn source_claims(&self, source: usize) -> &[Claim] {
        let (a, b) = self.source_ranges[source];
        &self.claims[a..b]
    }

    /// O_s
    pub fn source_objects(&self, source: usize) -> &[usize] {
        &self.source_objects[source]
    }

    /// S_o
    pub fn object_sources(&self, object: usize) -> &[usize] {
        &self.object_sources[object]
    }

    /// S_v for value `value` of `object`.
    pub fn value_sources(&self, object: usize, value: usize) -> &[usize] {
        &self.value_sources[object][value]
    }

    /// V_{s,o}: the claims of `source` on `object` (empty if not covered).
    pub fn claimed_values(&self, source: usize, object: usize) -> &[Claim] {
        let claims = self.source_claims(source);
        let lo = claims.partition_point(|c| c.object < object);
        let hi = claims.partition_point(|c| c.object <= object);
        &claims[lo..hi]
    }

    /// Claims of `source` grouped by object.
    pub fn claims_by_object(&self, source: usize) -> impl Iterator<Item = &[Claim]> {
        self.source_claims(source)
            .chunk_by(|a, b| a.object == b.object)
    }

    pub fn source_index(&self, name: &str) -> Option<usize> {
        position(&self.sources, name)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        position(&self.objects, name)
    }

    pub fn value_index(&self, object: usize, name: &str) -> Option<usize> {
        position(&self.values[object], name)
    }

    pub fn value_name(&self, object: usize, value: usize) -> &str {
        &self.values[object][value]
    }

    pub fn stats(&self) -> DatasetStats {
        DatasetStats {
            sources: self.sources.len(),
            objects: self.objects.len(),
            values: self.values.iter().map(Vec::len).sum(),
            claims: self.claims.len(),
        }
    }

    /// Rows seen at ingestion, before duplicate collapsing.
    pub fn rows_read(&self) -> usize {
        self.rows_read
    }

    pub fn duplicates_collapsed(&self) -> usize {
        self.duplicates
    }

    /// The claim list as owned string triples, in index order.
    pub fn triples(&self) -> Vec<(String, String, String)> {
        self.claims
            .iter()
            .map(|c| {
                (
                    self.sources[c.source].clone(),
                    self.objects[c.object].clone(),
                    self.values[c.object][c.value].clone(),
                )
            })
            .collect()
    }

    /// Resolves a truth assignment against this dataset.
    ///
    /// With `require_all` every object must be present. Objects named by the
    /// assignment but absent from the dataset are always an error. Truth
    /// values that nobody claimed are counted in [`TruthMask::unclaimed`].
    pub fn truth_mask(&self, truth: &TruthAssignment, require_all: bool) -> Result<TruthMask> {
        let mut objects: Vec<Option<Vec<bool>>> = vec![None; self.objects.len()];
        let mut unclaimed = 0;
        for (object, vals) in truth.iter() {
            let o = self.object_index(object).ok_or_else(|| {
                Error::Consistency(format!("truth references unknown object `{object}`"))
            })?;
            let mut mask = vec![false; self.values[o].len()];
            for v in vals {
                match self.value_index(o, v) {
                    Some(i) => mask[i] = true,
                    None => unclaimed += 1,
                }
            }
            objects[o] = Some(mask);
        }
        if require_all {
            if let Some(o) = objects.iter().position(Option::is_none) {
                return Err(Error::Consistency(format!(
                    "no identified truth for object `{}`",
                    self.objects[o]
                )));
            }
        }
        Ok(TruthMask { objects, unclaimed })
    }
}

/// Per-object boolean view of a truth assignment over V_o.
#[derive(Clone, Debug, PartialEq)]
pub struct TruthMask {
    pub objects: Vec<Option<Vec<bool>>>,
    pub unclaimed: usize,
}

impl TruthMask {
    pub fn is_true(&self, object: usize, value: usize) -> bool {
        self.objects[object].as_ref().is_some_and(|m| m[value])
    }

    pub fn covers(&self, object: usize) -> bool {
        self.objects[object].is_some()
    }
}

/// Value sets per object, for either identified or ground truth.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TruthAssignment(BTreeMap<String, BTreeSet<String>>);

impl TruthAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, object: impl Into<String>, value: impl Into<String>) {
        self.0
            .entry(object.into())
            .or_default()
            .insert(value.into());
    }

    pub fn set(&mut self, object: impl Into<String>, values: BTreeSet<String>) {
        self.0.insert(object.into(), values);
    }

    pub fn get(&self, object: &str) -> Option<&BTreeSet<String>> {
        self.0.get(object)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BTreeSet<String>)> {
        self.0.iter()
    }

    pub fn objects(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    /// Keeps only the listed objects.
    pub fn restrict<'a>(&self, objects: impl IntoIterator<Item = &'a String>) -> Self {
        TruthAssignment(
            objects
                .into_iter()
                .filter_map(|o| self.0.get(o).map(|v| (o.clone(), v.clone())))
                .collect(),
        )
    }

    pub fn is_single_valued(&self) -> bool {
        self.0.values().all(|v| v.len() == 1)
    }
}

impl FromIterator<(String, String)> for TruthAssignment {
    fn from_iter<I: IntoIterator<Item = (String, String)>>(iter: I) -> Self {
        let mut t = TruthAssignment::new();
        for (o, v) in iter {
            t.insert(o, v);
        }
        t
    }
}

/// Canonical joint value for a member set: sorted, `|`-joined.
pub fn joint_value<S: AsRef<str>>(members: &[S]) -> String {
    let set: BTreeSet<&str> = members.iter().map(AsRef::as_ref).collect();
    set.into_iter().collect::<Vec<_>>().join("|")
}

/// Mapping between joint values and their member values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointValueView {
    /// object -> joint value -> member values
    members: BTreeMap<String, BTreeMap<String, BTreeSet<String>>>,
    /// (source, object) -> joint value
    assignments: BTreeMap<(String, String), String>,
}

impl JointValueView {
    pub fn joint_of(&self, source: &str, object: &str) -> Option<&str> {
        self.assignments
            .get(&(source.to_string(), object.to_string()))
            .map(String::as_str)
    }

    pub fn members(&self, object: &str, joint: &str) -> Option<&BTreeSet<String>> {
        self.members.get(object).and_then(|m| m.get(joint))
    }
}

/// Collapses each source's value set on an object into one joint value.
pub fn to_joint_view(dataset: &ClaimDataset) -> (ClaimDataset, JointValueView) {
    let mut view = JointValueView::default();
    let mut triples = Vec::new();
    for s in 0..dataset.sources().len() {
        for group in dataset.claims_by_object(s) {
            let o = group[0].object;
            let members: Vec<&str> = group
                .iter()
                .map(|c| dataset.value_name(o, c.value))
                .collect();
            let joint = joint_value(&members);
            let source = dataset.sources()[s].clone();
            let object = dataset.objects()[o].clone();
            view.members
                .entry(object.clone())
                .or_default()
                .entry(joint.clone())
                .or_insert_with(|| members.iter().map(|m| m.to_string()).collect());
            view.assignments
                .insert((source.clone(), object.clone()), joint.clone());
            triples.push((source, object, joint));
        }
    }
    let mut joint = ClaimDataset::build(
        triples
            .into_iter()
            .enumerate()
            .map(|(i, (s, o, v))| (i as u64 + 1, s, o, v))
            .collect(),
        Mode::SingleValued,
        true,
    )
    .unwrap_or_else(|_| unreachable!("joint values are valid single-valued claims"));
    joint.rows_read = dataset.rows_read;
    joint.duplicates = dataset.duplicates;
    (joint, view)
}

/// Replaces each object's winning joint value(s) by the member values.
pub fn explode_truths(
    joint_truths: &TruthAssignment,
    view: &JointValueView,
) -> Result<TruthAssignment> {
    let mut out = TruthAssignment::new();
    for (object, joints) in joint_truths.iter() {
        let mut members = BTreeSet::new();
        for j in joints {
            let m = view.members(object, j).ok_or_else(|| {
                Error::Consistency(format!("unknown joint value `{j}` on object `{object}`"))
            })?;
            members.extend(m.iter().cloned());
        }
        out.set(object.clone(), members);
    }
    Ok(out)
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers()?;
    let got: Vec<&str> = header.iter().collect();
    if got != expected {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header `{}`, found `{}`",
                expected.join(","),
                got.join(",")
            ),
        });
    }
    Ok(())
}

fn read_rows<R: Read>(reader: R, header: &[&str]) -> Result<Vec<(u64, Vec<String>)>> {
    let mut rdr = csv_reader(reader);
    check_header(&mut rdr, header)?;
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != header.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} columns, found {}", header.len(), record.len()),
            });
        }
        rows.push((line, record.iter().map(str::to_string).collect()));
    }
    Ok(rows)
}

/// Reads a `source,object,value` claims CSV.
pub fn read_claims<R: Read>(reader: R, mode: Mode) -> Result<ClaimDataset> {
    let rows = read_rows(reader, &["source", "object", "value"])?
        .into_iter()
        .map(|(line, mut r)| {
            let v = r.pop().unwrap_or_default();
            let o = r.pop().unwrap_or_default();
            let s = r.pop().unwrap_or_default();
            (line, s, o, v)
        })
        .collect();
    ClaimDataset::build(rows, mode, false)
}

pub fn load_claims(path: impl AsRef<Path>, mode: Mode) -> Result<ClaimDataset> {
    let dataset = read_claims(crate::error::open(path.as_ref())?, mode)?;
    log::info!(
        "loaded {} rows from {} ({} duplicates collapsed)",
        dataset.rows_read(),
        path.as_ref().display(),
        dataset.duplicates_collapsed()
    );
    Ok(dataset)
}

pub fn write_claims<W: Write>(dataset: &ClaimDataset, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["source", "object", "value"])?;
    for (s, o, v) in dataset.triples() {
        w.write_record([s, o, v])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an `object,value` ground-truth CSV. In single-valued mode an object
/// may appear on one row only.
pub fn read_truth<R: Read>(reader: R, mode: Mode) -> Result<TruthAssignment> {
    let mut truth = TruthAssignment::new();
    for (line, row) in read_rows(reader, &["object", "value"])? {
        check_field(&row[0], line, "object", false)?;
        check_field(&row[1], line, "value", false)?;
        if mode == Mode::SingleValued {
            if let Some(existing) = truth.get(&row[0]) {
                if !existing.contains(&row[1]) {
                    return Err(Error::Parse {
                        line,
                        message: format!(
                            "object `{}` has several true values in single-valued mode",
                            row[0]
                        ),
                    });
                }
            }
        }
        truth.insert(row[0].clone(), row[1].clone());
    }
    Ok(truth)
}

pub fn load_truth(path: impl AsRef<Path>, mode: Mode) -> Result<TruthAssignment> {
    read_truth(crate::error::open(path.as_ref())?, mode)
}

pub fn write_truth<W: Write>(truth: &TruthAssignment, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["object", "value"])?;
    for (o, vals) in truth.iter() {
        for v in vals {
            w.write_record([o, v])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> ClaimDataset {
        read_claims(
            "source,object,value\ns1,o1,a\ns2,o1,a\ns3,o1,b\n".as_bytes(),
            Mode::SingleValued,
        )
        .unwrap()
    }

    #[test]
    fn three_row_file() {
        let d = toy();
        assert_eq!(d.sources().len(), 3);
        assert_eq!(d.objects().len(), 1);
        assert_eq!(d.values(0), ["a", "b"]);
        assert_eq!(d.value_sources(0, 0), [0, 1]);
        assert_eq!(d.value_sources(0, 1), [2]);
        assert_eq!(d.object_sources(0), [0, 1, 2]);
        assert_eq!(d.rows_read(), 3);
    }

    #[test]
    fn duplicates_collapse() {
        let d = read_claims(
            "source,object,value\ns1,o1,a\ns1,o1,a\n".as_bytes(),
            Mode::SingleValued,
        )
        .unwrap();
        assert_eq!(d.claims().len(), 1);
        assert_eq!(d.duplicates_collapsed(), 1);
    }

    #[test]
    fn single_mode_violation_names_pair() {
        let err = read_claims(
            "source,object,value\ns1,o1,a\ns1,o1,b\n".as_bytes(),
            Mode::SingleValued,
        )
        .unwrap_err();
        match err {
            Error::Mode { source_id, object } => {
                assert_eq!(source_id, "s1");
                assert_eq!(object, "o1");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_rows_report_line() {
        let err = read_claims(
            "source,object,value\ns1,o1,a\ns2,o1\n".as_bytes(),
            Mode::SingleValued,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = read_claims(
            "source,object,value\ns1, ,a\n".as_bytes(),
            Mode::SingleValued,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = read_claims(
            "source,object,value\ns1,o1,a|b\n".as_bytes(),
            Mode::MultiValued,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = read_claims("src,object,value\n".as_bytes(), Mode::MultiValued).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn quoted_commas_survive() {
        let d = read_claims(
            "source,object,value\ns1,\"Smith, J.\",\"Doe, Jane\"\n".as_bytes(),
            Mode::SingleValued,
        )
        .unwrap();
        assert_eq!(d.objects(), ["Smith, J."]);
        assert_eq!(d.values(0), ["Doe, Jane"]);
    }

    #[test]
    fn joint_values_are_order_insensitive() {
        assert_eq!(joint_value(&["Anna", "Tim"]), "Anna|Tim");
        assert_eq!(joint_value(&["Tim", "Anna"]), "Anna|Tim");
        let d = ClaimDataset::from_triples(
            [
                ("s1", "o", "Tim"),
                ("s1", "o", "Anna"),
                ("s2", "o", "Anna"),
                ("s2", "o", "Tim"),
                ("s3", "o", "Anna"),
            ],
            Mode::MultiValued,
        )
        .unwrap();
        let (joint, view) = to_joint_view(&d);
        assert_eq!(joint.mode(), Mode::SingleValued);
        assert_eq!(joint.values(0), ["Anna", "Anna|Tim"]);
        assert_eq!(joint.value_sources(0, 1), [0, 1]);
        assert_eq!(view.joint_of("s1", "o"), Some("Anna|Tim"));
    }

    #[test]
    fn explode_inverts_joint_view() {
        let d = ClaimDataset::from_triples(
            [("s1", "o", "Tim"), ("s1", "o", "Anna"), ("s2", "o", "Anna")],
            Mode::MultiValued,
        )
        .unwrap();
        let (_, view) = to_joint_view(&d);
        let mut jt = TruthAssignment::new();
        jt.insert("o", "Anna|Tim");
        let t = explode_truths(&jt, &view).unwrap();
        assert_eq!(
            t.get("o").unwrap().iter().collect::<Vec<_>>(),
            ["Anna", "Tim"]
        );
        let mut jt = TruthAssignment::new();
        jt.insert("o", "Anna");
        let t = explode_truths(&jt, &view).unwrap();
        assert_eq!(t.get("o").unwrap().len(), 1);
        let mut jt = TruthAssignment::new();
        jt.insert("o", "Bob");
        assert!(matches!(
            explode_truths(&jt, &view),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn claimed_values_slices() {
        let d = ClaimDataset::from_triples(
            [
                ("s1", "o1", "a"),
                ("s1", "o2", "x"),
                ("s1", "o2", "y"),
                ("s2", "o2", "x"),
            ],
            Mode::MultiValued,
        )
        .unwrap();
        assert_eq!(d.claimed_values(0, 1).len(), 2);
        assert_eq!(d.claimed_values(1, 0).len(), 0);
        assert_eq!(d.source_objects(0), [0, 1]);
        assert_eq!(d.claims_by_object(0).count(), 2);
    }

    #[test]
    fn truth_file_rules() {
        let t = read_truth("object,value\no1,a\no1,b\n".as_bytes(), Mode::MultiValued).unwrap();
        assert_eq!(t.get("o1").unwrap().len(), 2);
        assert!(read_truth("object,value\no1,a\no1,b\n".as_bytes(), Mode::SingleValued).is_err());
        let d = toy();
        let t = read_truth("object,value\no9,a\n".as_bytes(), Mode::SingleValued).unwrap();
        assert!(matches!(
            d.truth_mask(&t, false),
            Err(Error::Consistency(_))
        ));
    }
}
