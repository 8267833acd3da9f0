//! JSON structure files.
//!
//! Every file is an object with a `kind` field. Parsing rejects unknown
//! fields; printing is pretty JSON with a trailing newline, so printing a
//! parsed bundled file reproduces it byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{malformed, Error, Result};
use crate::fan::{DefinableSet, FanSpace, Point, Tag, Tail, Trace};
use crate::hom::AlgHom;
use crate::lattice::FinLattice;
use crate::morphism::{FanMap, TailMap};
use crate::poset::FinPoset;
use crate::subset::Subset;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub size: usize,
    pub leq: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub poset: PosetFile,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HomFile {
    pub dom: LatticeFile,
    pub cod: LatticeFile,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TailFile {
    pub limit: usize,
    pub below: Vec<usize>,
    pub excluded: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FanSpaceFile {
    pub skeleton: PosetFile,
    pub tags: Vec<Tag>,
    pub tails: Vec<TailFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<u64>>,
    pub exceptions: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub named: Vec<usize>,
    pub tails: Vec<TraceFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum TailMapFile {
    Const(Point),
    Embed { tail: usize, a: u64, b: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OverrideFile {
    pub tail: usize,
    pub index: u64,
    pub to: Point,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FanMapFile {
    pub dom: FanSpaceFile,
    pub cod: FanSpaceFile,
    pub named: Vec<Point>,
    pub tails: Vec<TailMapFile>,
    #[serde(default)]
    pub overrides: Vec<OverrideFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub pairs: Vec<(usize, usize)>,
}

/// Any structure file, tagged by `kind`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StructureFile {
    Poset(PosetFile),
    Lattice(LatticeFile),
    Hom(HomFile),
    Fanspace(FanSpaceFile),
    Fanmap(FanMapFile),
    Relation(RelationFile),
}

impl StructureFile {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureFile::Poset(_) => "poset",
            StructureFile::Lattice(_) => "lattice",
            StructureFile::Hom(_) => "hom",
            StructureFile::Fanspace(_) => "fanspace",
            StructureFile::Fanmap(_) => "fanmap",
            StructureFile::Relation(_) => "relation",
        }
    }
}

/// Parses a structure file. Syntax errors carry line and column; shape
/// errors (unknown or missing fields, wrong types) carry the structure path.
pub fn parse(text: &str) -> Result<StructureFile> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| {
        malformed(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let serde_json::Value::Object(mut fields) = value else {
        return Err(malformed("root", "expected an object"));
    };
    let kind = match fields.remove("kind") {
        Some(serde_json::Value::String(k)) => k,
        Some(_) => return Err(malformed("kind", "expected a string")),
        None => return Err(malformed("root", "missing field `kind`")),
    };
    let rest = serde_json::Value::Object(fields);
    Ok(match kind.as_str() {
        "poset" => StructureFile::Poset(typed(rest)?),
        "lattice" => StructureFile::Lattice(typed(rest)?),
        "hom" => StructureFile::Hom(typed(rest)?),
        "fanspace" => StructureFile::Fanspace(typed(rest)?),
        "fanmap" => StructureFile::Fanmap(typed(rest)?),
        "relation" => StructureFile::Relation(typed(rest)?),
        other => return Err(malformed("kind", format!("unknown kind `{other}`"))),
    })
}

fn typed<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." {
            "root".to_string()
        } else {
            path
        };
        malformed(path, e.into_inner().to_string())
    })
}

/// Pretty JSON with a trailing newline.
pub fn print<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

impl PosetFile {
    pub fn from_poset(p: &FinPoset) -> PosetFile {
        PosetFile {
            size: p.size(),
            leq: p.cover_pairs(),
        }
    }

    pub fn to_poset(&self) -> Result<FinPoset> {
        FinPoset::from_pairs(self.size, &self.leq)
    }
}

impl LatticeFile {
    pub fn from_lattice(l: &FinLattice) -> LatticeFile {
        LatticeFile {
            poset: PosetFile::from_poset(l.order()),
        }
    }

    pub fn to_lattice(&self) -> Result<FinLattice> {
        FinLattice::from_poset(self.poset.to_poset()?)
    }
}

impl HomFile {
    pub fn from_hom(h: &AlgHom) -> HomFile {
        HomFile {
            dom: LatticeFile::from_lattice(&h.dom),
            cod: LatticeFile::from_lattice(&h.cod),
            map: h.map.clone(),
        }
    }

    pub fn to_hom(&self) -> Result<AlgHom> {
        AlgHom::new(
            self.dom.to_lattice()?,
            self.cod.to_lattice()?,
            self.map.clone(),
        )
    }
}

impl FanSpaceFile {
    pub fn from_space(x: &FanSpace) -> FanSpaceFile {
        FanSpaceFile {
            skeleton: PosetFile::from_poset(x.skeleton()),
            tags: x.tags().to_vec(),
            tails: x
                .tails()
                .iter()
                .map(|t| TailFile {
                    limit: t.limit,
                    below: t.below.to_vec(),
                    excluded: t.excluded.clone(),
                })
                .collect(),
        }
    }

    pub fn to_space(&self) -> Result<FanSpace> {
        let skeleton = self.skeleton.to_poset()?;
        let n = skeleton.size();
        let tails = self
            .tails
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if let Some(&bad) = t.below.iter().find(|&&b| b >= n) {
                    return Err(malformed(
                        format!("fanspace.tails[{i}].below"),
                        format!("index {bad} outside the skeleton"),
                    ));
                }
                Ok(Tail {
                    limit: t.limit,
                    below: Subset::from_indices(t.below.iter().copied()),
                    excluded: t.excluded.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FanSpace::new(skeleton, self.tags.clone(), tails)
    }
}

impl TraceFile {
    pub fn from_trace(t: &Trace) -> TraceFile {
        let mode = t.mode();
        let (period, residues) = if mode == "PERIODIC" {
            let r = (0..t.period())
                .filter(|&r| t.residues() >> r & 1 == 1)
                .collect();
            (Some(t.period()), Some(r))
        } else {
            (None, None)
        };
        TraceFile {
            mode: mode.to_string(),
            period,
            residues,
            exceptions: t.exceptions().to_vec(),
        }
    }

    pub fn to_trace(&self, path: &str) -> Result<Trace> {
        match (self.mode.as_str(), self.period, &self.residues) {
            ("FIN", None, None) => Ok(Trace::finite(self.exceptions.iter().copied())),
            ("COFIN", None, None) => Ok(Trace::cofinite(self.exceptions.iter().copied())),
            ("PERIODIC", Some(p), Some(rs)) => {
                if let Some(&bad) = rs.iter().find(|&&r| r >= p) {
                    return Err(malformed(
                        path,
                        format!("residue {bad} not below period {p}"),
                    ));
                }
                let mask = rs.iter().fold(0u64, |m, &r| m | 1 << r);
                Trace::periodic(p, mask, self.exceptions.iter().copied())
            }
            (m, _, _) => Err(malformed(
                path,
                format!("bad trace mode or fields for {m:?}"),
            )),
        }
    }
}

impl SetFile {
    pub fn from_set(d: &DefinableSet) -> SetFile {
        SetFile {
            named: d.named().to_vec(),
            tails: d.tails().iter().map(TraceFile::from_trace).collect(),
        }
    }

    pub fn to_set(&self, space: &Arc<FanSpace>) -> Result<DefinableSet> {
        let n = space.skeleton_size();
        if let Some(&bad) = self.named.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: n,
            });
        }
        let tails = self
            .tails
            .iter()
            .enumerate()
            .map(|(i, t)| t.to_trace(&format!("set.tails[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        DefinableSet::new(
            space.clone(),
            Subset::from_indices(self.named.iter().copied()),
            tails,
        )
    }
}

impl Serialize for DefinableSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetFile::from_set(self).serialize(s)
    }
}

impl FanMapFile {
    pub fn from_map(f: &FanMap) -> FanMapFile {
        FanMapFile {
            dom: FanSpaceFile::from_space(f.dom()),
            cod: FanSpaceFile::from_space(f.cod()),
            named: f.named().to_vec(),
            tails: f
                .tail_maps()
                .iter()
                .map(|t| match *t {
                    TailMap::Const(p) => TailMapFile::Const(p),
                    TailMap::Embed { tail, a, b } => TailMapFile::Embed { tail, a, b },
                })
                .collect(),
            overrides: f
                .overrides()
                .iter()
                .map(|(&(tail, index), &to)| OverrideFile { tail, index, to })
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<FanMap> {
        let dom = Arc::new(self.dom.to_space()?);
        let cod = Arc::new(self.cod.to_space()?);
        let tails = self
            .tails
            .iter()
            .map(|t| match *t {
                TailMapFile::Const(p) => TailMap::Const(p),
                TailMapFile::Embed { tail, a, b } => TailMap::Embed { tail, a, b },
            })
            .collect();
        let overrides = self
            .overrides
            .iter()
            .map(|o| ((o.tail, o.index), o.to))
            .collect();
        FanMap::new(dom, cod, self.named.clone(), tails, overrides)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples::bundled;

    #[test]
    fn spaces_round_trip() {
        for (_, x) in bundled() {
            let file = StructureFile::Fanspace(FanSpaceFile::from_space(&x));
            let text = print(&file);
            let back = parse(&text).unwrap();
            assert_eq!(print(&back), text);
            let StructureFile::Fanspace(f) = back else {
                panic!()
            };
            assert_eq!(f.to_space().unwrap(), x);
        }
    }

    #[test]
    fn unknown_fields_and_kinds_are_rejected() {
        assert!(parse(r#"{"kind":"poset","size":1,"leq":[],"extra":1}"#).is_err());
        assert!(parse(r#"{"kind":"nope"}"#).is_err());
        let err = parse("{\n  \"kind\": \"poset\",\n  \"size\": }").unwrap_err();
        assert!(err.to_string().contains("line 3"));
    }

    #[test]
    fn sets_round_trip_with_periodic_traces() {
        let x = Arc::new(crate::fan::examples::x3());
        let d = DefinableSet::new(
            x.clone(),
            Subset::singleton(0),
            vec![Trace::periodic(2, 1, [3]).unwrap()],
        )
        .unwrap();
        let text = print(&d);
        let f: SetFile = serde_json::from_str(&text).unwrap();
        assert_eq!(f.to_set(&x).unwrap(), d);
        assert!(text.contains("PERIODIC"));
    }

    #[test]
    fn posets_print_cover_pairs() {
        let p = FinPoset::chain(3);
        let f = PosetFile::from_poset(&p);
        assert_eq!(f.leq, vec![(0, 1), (1, 2)]);
        assert_eq!(f.to_poset().unwrap(), p);
    }
}
