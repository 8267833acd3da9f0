//! Verbs of the command line. Every verb validates its inputs before any
//! computation; malformed input is an [`InputError`] (exit status 2).

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use esakia::brouwerian::{check_triangle_brw, filter_frame, pointed_spectrum, GenRelation};
use esakia::canon::enumerate_posets;
use esakia::duality::{check_triangle_dl, clopup, ideal_frame, prime_filters};
use esakia::fan::{validate, validate_with, BasisConfig, FanSpace};
use esakia::format::{self, LatticeFile, PosetFile, StructureFile};
use esakia::lattice::lattices_upto;
use esakia::morphism::{classify_with, preimage_hom_check, spectral_open_failure, FanMap};
use esakia::{FinLattice, FinPoset, MeetSemilatticeView};
use serde_json::{json, Value};

use crate::recheck::witness_fails;
use crate::report::{Format, Line, Report};
use crate::suite::{self, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(
    name = "esakia",
    version,
    about = "Priestley and Esakia duality workbench"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Re-evaluate the witness of every FAIL line independently.
    #[arg(long, global = true)]
    pub verify_witnesses: bool,
    /// Fresh indices per tail in the classifier's shape bases.
    #[arg(long, global = true, default_value_t = 1)]
    pub basis_depth: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a structure and report its properties.
    Check {
        /// Any structure file; the checks follow its kind.
        path: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["path", "brouwerian"])]
        fanspace: Option<PathBuf>,
        /// A lattice read as a distributive meet-semilattice.
        #[arg(long, conflicts_with = "path")]
        brouwerian: Option<PathBuf>,
        /// A relation on the pointed spectrum of the `--brouwerian` input.
        #[arg(long, requires = "brouwerian")]
        relation: Option<PathBuf>,
    },
    /// Emit the dual of a structure as a structure file.
    #[command(group(ArgGroup::new("target").required(true)))]
    Dualize {
        path: PathBuf,
        /// Prime filters of a lattice.
        #[arg(long, group = "target")]
        pf: bool,
        /// Ideal frame of a lattice.
        #[arg(long, group = "target")]
        ideals: bool,
        /// Clopen upsets of a finite poset.
        #[arg(long, group = "target")]
        clopup: bool,
        /// Filter frame of a lattice read as a meet-semilattice.
        #[arg(long, group = "target")]
        filters: bool,
        /// Order of the pointed spectrum of a meet-semilattice.
        #[arg(long, group = "target")]
        spectrum: bool,
        /// Admissible sets of the pointed spectrum.
        #[arg(long, group = "target")]
        admissibles: bool,
    },
    /// Decide the five morphism classes of a fan map.
    Classify {
        #[arg(long)]
        map: PathBuf,
    },
    /// Run the finite-tier invariants up to a size bound.
    Roundtrip {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// The meet-semilattice invariants instead.
        #[arg(long)]
        brw: bool,
    },
    /// Stream canonical representatives.
    Enumerate {
        #[arg(value_enum)]
        kind: Kind,
        n: usize,
        /// Write one file per structure here instead of to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the reference classifications and space verdicts.
    ReplicatePaper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Posets,
    Lattices,
    Distributive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

type Result<T> = std::result::Result<T, InputError>;

/// What a verb produces.
pub enum Output {
    Report(Report),
    /// Structure files as `(name, contents)`, in stream order.
    Files(Vec<(String, String)>),
}

fn at(path: &Path) -> impl Fn(esakia::Error) -> InputError + '_ {
    move |e| InputError(format!("{}: {e}", path.display()))
}

pub fn load(path: &Path) -> Result<StructureFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(at(path))
}

fn expect_lattice(path: &Path) -> Result<FinLattice> {
    match load(path)? {
        StructureFile::Lattice(l) => l.to_lattice().map_err(at(path)),
        other => Err(InputError(format!(
            "{}: expected a lattice, found a {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn expect_poset(path: &Path) -> Result<FinPoset> {
    match load(path)? {
        StructureFile::Poset(p) => p.to_poset().map_err(at(path)),
        other => Err(InputError(format!(
            "{}: expected a poset, found a {}",
            path.display(),
            other.kind()
        ))),
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = BasisConfig {
        depth: cli.basis_depth,
    };
    let mut report = match &cli.command {
        Command::Check {
            path,
            fanspace,
            brouwerian,
            relation,
        } => {
            if let Some(p) = fanspace {
                match load(p)? {
                    StructureFile::Fanspace(f) => {
                        check_fanspace(&f.to_space().map_err(at(p))?, cfg)
                    }
                    other => {
                        return Err(InputError(format!(
                            "{}: expected a fanspace, found a {}",
                            p.display(),
                            other.kind()
                        )))
                    }
                }
            } else if let Some(p) = brouwerian {
                let l = expect_lattice(p)?;
                let rel = match relation {
                    Some(r) => match load(r)? {
                        StructureFile::Relation(f) => Some((r.clone(), f.pairs)),
                        other => {
                            return Err(InputError(format!(
                                "{}: expected a relation, found a {}",
                                r.display(),
                                other.kind()
                            )))
                        }
                    },
                    None => None,
                };
                check_brouwerian(&l, rel)?
            } else if let Some(p) = path {
                check_file(p, cfg)?
            } else {
                return Err(InputError(
                    "check needs a path, --fanspace or --brouwerian".into(),
                ));
            }
        }
        Command::Dualize {
            path,
            pf,
            ideals,
            clopup: cu,
            filters,
            spectrum,
            admissibles,
        } => {
            let text = if *cu {
                let p = expect_poset(path)?;
                format::print(&StructureFile::Lattice(LatticeFile::from_lattice(
                    &clopup(&p).map_err(at(path))?.lattice,
                )))
            } else {
                let l = expect_lattice(path)?;
                let e = at(path);
                let out = if *pf {
                    StructureFile::Poset(PosetFile::from_poset(
                        &prime_filters(&l).map_err(&e)?.order,
                    ))
                } else if *ideals {
                    StructureFile::Lattice(LatticeFile::from_lattice(
                        &ideal_frame(&l).map_err(&e)?.ideals.lattice,
                    ))
                } else {
                    let v = MeetSemilatticeView::new(l);
                    if *filters {
                        StructureFile::Lattice(LatticeFile::from_lattice(
                            filter_frame(&v).map_err(&e)?.lattice(),
                        ))
                    } else {
                        let x = pointed_spectrum(&v).map_err(&e)?;
                        if *spectrum {
                            StructureFile::Poset(PosetFile::from_poset(x.space.order()))
                        } else {
                            debug_assert!(*admissibles);
                            StructureFile::Lattice(LatticeFile::from_lattice(
                                &x.space.admissible_lattice().map_err(&e)?.lattice,
                            ))
                        }
                    }
                };
                format::print(&out)
            };
            return Ok(Output::Files(vec![("dual.json".into(), text)]));
        }
        Command::Classify { map } => match load(map)? {
            StructureFile::Fanmap(f) => classify_map(&f.to_map().map_err(at(map))?, cfg),
            other => {
                return Err(InputError(format!(
                    "{}: expected a fanmap, found a {}",
                    map.display(),
                    other.kind()
                )))
            }
        },
        Command::Roundtrip { max_size, brw } => {
            if *max_size > 8 {
                return Err(InputError(format!(
                    "--max-size {max_size} exceeds the supported bound 8"
                )));
            }
            if *brw {
                suite::roundtrip_brouwerian(*max_size)
            } else {
                suite::roundtrip(*max_size)
            }
        }
        Command::Enumerate { kind, n, .. } => return enumerate(*kind, *n).map(Output::Files),
        Command::ReplicatePaper => replicate(),
    };
    if cli.verify_witnesses {
        report.verify_witnesses();
    }
    Ok(Output::Report(report))
}

/// Reference table, space verdicts, and the classifier's answer on the cell
/// the reference leaves open.
pub fn replicate() -> Report {
    let mut r = Report::new();
    r.extend(suite::golden());
    r.extend(suite::bundled_spaces());
    let f2 = Arc::new(esakia::morphism::examples::f2());
    match esakia::morphism::classify(&f2) {
        Ok(v) => r.push(Line::new(
            "derived/f2/es_star",
            !v.es_star,
            json!({ "expected": false, "got": v.es_star, "witness": v.witnesses.get("es_star") }),
        )),
        Err(e) => r.push(Line::new(
            "derived/f2/es_star",
            false,
            json!({ "error": e.to_string() }),
        )),
    }
    r
}

fn check_fanspace(x: &FanSpace, cfg: BasisConfig) -> Report {
    let v = validate_with(x, cfg);
    let mut r = Report::new();
    r.push(Line::new(
        "fanspace/priestley",
        v.priestley,
        json!({ "failure": v.priestley_failure }),
    ));
    let down = v.down_failure.clone();
    let line = Line::new(
        "fanspace/esakia",
        v.esakia,
        json!({ "down_failure": v.down_failure, "implication_failure": v.implication_failure }),
    );
    r.push(match down {
        // The certificate stands if the clopen set's down-closure, recomputed, is not clopen.
        Some(d) => {
            line.with_recheck(move || d.clopen.is_clopen() && !d.clopen.down_closure().is_clopen())
        }
        None => line,
    });
    r.push(Line::new(
        "fanspace/routes_agree",
        v.routes_agree(),
        json!({ "down_route": v.down_route, "implication_route": v.implication_route }),
    ));
    r
}

fn classify_map(f: &FanMap, cfg: BasisConfig) -> Report {
    let mut r = Report::new();
    let f = Arc::new(f.clone());
    let v = match classify_with(&f, cfg) {
        Ok(v) => v,
        Err(e) => {
            r.push(Line::new(
                "classify",
                false,
                json!({ "error": e.to_string() }),
            ));
            return r;
        }
    };
    for (name, flag) in suite::CELLS.iter().zip(v.flags()) {
        let w = v.witnesses.get(*name).cloned();
        let line = Line::new(format!("classify/{name}"), flag, json!({ "witness": w }));
        r.push(match w {
            Some(w) => {
                let f = f.clone();
                line.with_recheck(move || witness_fails(&f, &w))
            }
            None => line,
        });
    }
    match spectral_open_failure(&f, cfg) {
        Ok(w) => {
            let line = Line::new(
                "classify/spectral_open",
                w.is_none(),
                json!({ "witness": w }),
            );
            r.push(match w {
                Some(w) => {
                    line.with_recheck(move || !(w.image.is_open() && w.image.is_upset_def()))
                }
                None => line,
            });
        }
        Err(e) => r.push(Line::new(
            "classify/spectral_open",
            false,
            json!({ "error": e.to_string() }),
        )),
    }
    match preimage_hom_check(&f, cfg) {
        Ok(routes) => {
            for rc in routes {
                r.push(Line::new(
                    format!("classify/routes/{}", rc.class),
                    rc.agree(),
                    serde_json::to_value(&rc).expect("serializable"),
                ));
            }
        }
        Err(e) => r.push(Line::new(
            "classify/routes",
            false,
            json!({ "error": e.to_string() }),
        )),
    }
    r
}

fn check_file(path: &Path, cfg: BasisConfig) -> Result<Report> {
    let e = at(path);
    let mut r = Report::new();
    match load(path)? {
        StructureFile::Poset(p) => {
            let p = p.to_poset().map_err(&e)?;
            let v = validate(&FanSpace::embed_finite_poset(&p));
            r.push(Line::new("poset/priestley", v.priestley, Value::Null));
            r.push(Line::new("poset/esakia", v.esakia, Value::Null));
            let up = clopup(&p).map_err(&e)?;
            r.push(Line::new(
                "poset/clopup_distributive",
                up.lattice.is_distributive(),
                json!({ "size": up.size() }),
            ));
        }
        StructureFile::Lattice(l) => {
            let l = l.to_lattice().map_err(&e)?;
            r.push(Line::new(
                "lattice/distributive",
                l.is_distributive(),
                json!({ "violation": l.distributivity_violation() }),
            ));
            r.push(Line::new(
                "lattice/heyting",
                l.is_heyting_algebra(),
                json!({ "violation": l.residual_violation() }),
            ));
            let t = check_triangle_dl(&l, &[]);
            let failed: Vec<_> = t.legs.iter().filter(|l| !l.pass).collect();
            r.push(Line::new(
                "lattice/triangle",
                t.passed(),
                json!({ "legs": t.legs.len(), "failed": failed }),
            ));
        }
        StructureFile::Hom(h) => {
            let h = h.to_hom().map_err(&e)?;
            for (name, v) in [
                ("meet_semilattice", h.ms_violation()),
                ("bounded_lattice", h.dl_violation()),
                ("heyting", h.ha_violation()),
            ] {
                r.push(Line::new(
                    format!("hom/{name}"),
                    v.is_none(),
                    json!({ "violation": v.map(|v| format!("{v:?}")) }),
                ));
            }
        }
        StructureFile::Fanspace(f) => r = check_fanspace(&f.to_space().map_err(&e)?, cfg),
        StructureFile::Fanmap(f) => r = classify_map(&f.to_map().map_err(&e)?, cfg),
        StructureFile::Relation(_) => {
            return Err(InputError(format!(
                "{}: a relation is checked with --brouwerian A.json --relation R.json",
                path.display()
            )))
        }
    }
    Ok(r)
}

fn check_brouwerian(
    l: &FinLattice,
    relation: Option<(PathBuf, Vec<(usize, usize)>)>,
) -> Result<Report> {
    let v = MeetSemilatticeView::new(l.clone());
    let mut r = Report::new();
    r.push(Line::new(
        "brouwerian/distributive",
        v.is_distributive_ms(),
        json!({ "violation": v.distributivity_violation() }),
    ));
    if !v.is_distributive_ms() {
        return Ok(r);
    }
    let x = pointed_spectrum(&v).map_err(|e| InputError(e.to_string()))?;
    let failures = x.space.pgps_failures();
    r.push(Line::new(
        "brouwerian/spectrum_pgps",
        failures.is_empty(),
        json!({ "failures": failures }),
    ));
    let brw = v.is_brouwerian_semilattice();
    r.push(Line::new("brouwerian/implication", brw, Value::Null));
    r.push(Line::new(
        "brouwerian/spectrum_pges",
        x.space.validate_pges() == brw,
        json!({ "pges": x.space.validate_pges(), "pges_violation": x.space.pges_violation().map(|s| format!("{s:?}")) }),
    ));
    let t = check_triangle_brw(&v, &[]);
    let failed: Vec<_> = t.legs.iter().filter(|l| !l.pass).collect();
    r.push(Line::new(
        "brouwerian/triangle",
        t.passed(),
        json!({ "legs": t.legs.len(), "failed": failed }),
    ));
    if let Some((path, pairs)) = relation {
        let rel =
            GenRelation::from_pairs(x.space.clone(), x.space.clone(), &pairs).map_err(at(&path))?;
        let gp = rel.gp_failure();
        r.push(Line::new(
            "relation/generalized_priestley",
            gp.is_none(),
            json!({ "failure": gp }),
        ));
        let ge = rel.ge_failure();
        r.push(Line::new(
            "relation/generalized_esakia",
            ge.is_none(),
            json!({ "failure": ge }),
        ));
    }
    Ok(r)
}

pub fn enumerate(kind: Kind, n: usize) -> Result<Vec<(String, String)>> {
    let (name, files) = match kind {
        Kind::Posets => (
            "poset",
            enumerate_posets(n)
                .map_err(|e| InputError(e.to_string()))?
                .iter()
                .map(|p| format::print(&StructureFile::Poset(PosetFile::from_poset(p))))
                .collect::<Vec<_>>(),
        ),
        Kind::Lattices | Kind::Distributive => {
            if n > 8 {
                return Err(InputError(format!(
                    "lattices of size {n} exceed the supported bound 8"
                )));
            }
            let ls = lattices_upto(n).map_err(|e| InputError(e.to_string()))?;
            let keep =
                |l: &FinLattice| l.size() == n && (kind == Kind::Lattices || l.is_distributive());
            (
                if kind == Kind::Lattices {
                    "lattice"
                } else {
                    "distributive"
                },
                ls.iter()
                    .filter(|l| keep(l))
                    .map(|l| format::print(&StructureFile::Lattice(LatticeFile::from_lattice(l))))
                    .collect(),
            )
        }
    };
    Ok(files
        .into_iter()
        .enumerate()
        .map(|(i, text)| (format!("{name}-{n}-{i:04}.json"), text))
        .collect())
}

/// Writes `files` into `dir`, or concatenates them on stdout.
pub fn emit(files: &[(String, String)], dir: Option<&Path>) -> std::io::Result<String> {
    match dir {
        Some(d) => {
            std::fs::create_dir_all(d)?;
            for (name, text) in files {
                std::fs::write(d.join(name), text)?;
            }
            Ok(String::new())
        }
        None => Ok(files.iter().map(|(_, t)| t.as_str()).collect()),
    }
}

/// Exit status: 0 all PASS, 1 some FAIL, 2 input error.
pub fn main_with(args: impl IntoIterator<Item = String>) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, String::new(), e.to_string());
        }
    };
    match run(&cli) {
        Ok(Output::Report(r)) => (r.exit_code(), r.render(cli.format), String::new()),
        Ok(Output::Files(files)) => {
            let dir = match &cli.command {
                Command::Enumerate { out, .. } => out.as_deref(),
                _ => None,
            };
            match emit(&files, dir) {
                Ok(s) => (0, s, String::new()),
                Err(e) => (2, String::new(), format!("error: {e}\n")),
            }
        }
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}
