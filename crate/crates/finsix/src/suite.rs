//! Check batteries, the report they produce, and its text and JSON renderings.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::adjunction::{mate_battery, sample_two_category};
use crate::category::{samples, FinSet, FiniteCategory};
use crate::corr::{dual_data, span_iso, validate_setup, Exceptional, GeometricSetup, Span};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::groupoid::{random_surjection, FiniteGroupoid, GroupoidFunctor, GroupoidRef, WideProduct};
use crate::hecke::{double_cosets, hecke_algebra, involution_report, prim_duality_on_hecke, Subgroup};
use crate::io::{parse_input, Input};
use crate::kernel::{etale_proper_test, prim_test, suave_test, KernelCat};
use crate::sheaf::{
    base_change, global_sections, irreducibles_s3, kunneth, projection_formula_left, projection_formula_right,
    random_groupoid, random_pair, random_sheaf, random_sheaf_bounded, Sheaf,
};
use crate::simplicial::{descent_comparison, pyramid_sections, DescentCategory};

pub const ALL_SUITES: [&str; 10] = [
    "setup", "corr", "cosets", "six", "kernels", "duality", "descent", "mates", "hecke", "sections",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub inputs: Vec<PathBuf>,
    pub field: Field,
    /// Largest pyramid level examined.
    pub truncate: usize,
    /// Random instances per battery.
    pub probes: usize,
    pub seed: u64,
    pub format: Format,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: ALL_SUITES.iter().map(|s| s.to_string()).collect(),
            inputs: Vec::new(),
            field: Field::Rational,
            truncate: 5,
            probes: 100,
            seed: 0,
            format: Format::Text,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Excluded by the semisimplicity gate.
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub seed: u64,
    pub field: String,
    pub truncate: usize,
    pub probes: usize,
    pub suites: Vec<String>,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

enum Outcome {
    Pass(String),
    Fail(String, Value),
}

struct Probe {
    id: &'static str,
    anchor: &'static str,
    run: fn(&SuiteConfig, &mut ChaCha8Rng) -> Result<Outcome>,
}

fn probes_of(suite: &str) -> Option<&'static [Probe]> {
    Some(match suite {
        "setup" => &[Probe {
            id: "setup.cancellative-agreement",
            anchor: "setup-cancellative",
            run: setup_agreement,
        }],
        "corr" => &[Probe {
            id: "corr.finset-duals",
            anchor: "corr-self-duality",
            run: corr_duals,
        }],
        "cosets" => &[Probe {
            id: "cosets.fiber-product",
            anchor: "double-cosets",
            run: cosets_fiber,
        }],
        "six" => &[
            Probe {
                id: "six.base-change",
                anchor: "proper-base-change",
                run: six_base_change,
            },
            Probe {
                id: "six.projection-formula",
                anchor: "projection-formula",
                run: six_projection,
            },
        ],
        "kernels" => &[
            Probe {
                id: "kernels.composition",
                anchor: "kernel-composition",
                run: kernels_composition,
            },
            Probe {
                id: "kernels.phi-psi",
                anchor: "kernel-phi-psi",
                run: kernels_phi_psi,
            },
        ],
        "duality" => &[
            Probe {
                id: "duality.suave",
                anchor: "suave-duality",
                run: duality_suave,
            },
            Probe {
                id: "duality.prim",
                anchor: "prim-duality",
                run: duality_prim,
            },
            Probe {
                id: "duality.etale-proper",
                anchor: "etale-proper",
                run: duality_etale_proper,
            },
        ],
        "descent" => &[
            Probe {
                id: "descent.points-over-point",
                anchor: "descent",
                run: descent_points,
            },
            Probe {
                id: "descent.point-over-bc2",
                anchor: "descent",
                run: descent_bc2,
            },
            Probe {
                id: "descent.point-over-bs3",
                anchor: "descent",
                run: descent_bs3,
            },
            Probe {
                id: "descent.random-surjection",
                anchor: "descent",
                run: descent_random,
            },
        ],
        "mates" => &[Probe {
            id: "mates.exhaustive",
            anchor: "mates",
            run: mates_exhaustive,
        }],
        "hecke" => &[
            Probe {
                id: "hecke.s3-c2",
                anchor: "hecke-models",
                run: hecke_models,
            },
            Probe {
                id: "hecke.anti-involution",
                anchor: "hecke-anti-involution",
                run: hecke_involution,
            },
            Probe {
                id: "hecke.prim-duality",
                anchor: "prim-duality-hecke",
                run: hecke_prim,
            },
        ],
        "sections" => &[
            Probe {
                id: "sections.kunneth",
                anchor: "kunneth",
                run: sections_kunneth,
            },
            Probe {
                id: "sections.unit",
                anchor: "global-sections",
                run: sections_unit,
            },
            Probe {
                id: "sections.pyramid-symmetry",
                anchor: "pyramid-symmetry",
                run: sections_pyramid,
            },
        ],
        _ => return None,
    })
}

/// Check ids of a suite with their anchors.
pub fn suite_checks(suite: &str) -> Option<Vec<(&'static str, &'static str)>> {
    probes_of(suite).map(|ps| ps.iter().map(|p| (p.id, p.anchor)).collect())
}

/// The random stream a check named `id` draws from.
pub fn stream(seed: u64, id: &str) -> ChaCha8Rng {
    // FNV-1a, so each check draws from its own reproducible stream
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn execute(cfg: &SuiteConfig, id: String, anchor: String, f: impl FnOnce(&mut ChaCha8Rng) -> Result<Outcome>) -> CheckRecord {
    let start = Instant::now();
    let mut rng = stream(cfg.seed, &id);
    let (status, witness, counterexample) = match f(&mut rng) {
        Ok(Outcome::Pass(w)) => (Status::Pass, w, None),
        Ok(Outcome::Fail(w, c)) => (Status::Fail, w, Some(c)),
        Err(Error::Gate(msg)) => (Status::Skip, format!("gated: {msg}"), None),
        Err(e) => {
            let anchor = match &e {
                Error::Theorem { anchor, .. } => anchor.clone(),
                _ => anchor.clone(),
            };
            (Status::Fail, format!("error: {e}"), Some(json!({ "error": e.to_string(), "anchor": anchor })))
        }
    };
    CheckRecord {
        id,
        anchor,
        status,
        witness,
        counterexample,
        elapsed: start.elapsed(),
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut selected: Vec<&Probe> = Vec::new();
    let mut suites = Vec::new();
    for s in &cfg.suites {
        let ps = probes_of(s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))?;
        if !suites.contains(s) {
            suites.push(s.clone());
            selected.extend(ps.iter());
        }
    }
    let mut checks: Vec<CheckRecord> = selected
        .par_iter()
        .map(|p| execute(cfg, p.id.to_string(), p.anchor.to_string(), |rng| (p.run)(cfg, rng)))
        .collect();
    let inputs: Vec<CheckRecord> = cfg
        .inputs
        .par_iter()
        .enumerate()
        .map(|(i, path)| {
            let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
            execute(cfg, format!("inputs.{i:02}.{name}"), "input-validation".into(), |_| check_input(cfg, path))
        })
        .collect();
    checks.extend(inputs);
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    if !cfg.inputs.is_empty() {
        suites.push("inputs".into());
    }
    let mut r = Report {
        schema: "finsix-report/1",
        seed: cfg.seed,
        field: cfg.field.to_string(),
        truncate: cfg.truncate,
        probes: cfg.probes,
        suites,
        passed: true,
        checks,
    };
    r.passed = r.passed();
    Ok(r)
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        Format::Text => {
            let mut out = format!(
                "finsix report: seed={} field={} truncate={} probes={} suites={}\n",
                r.seed,
                r.field,
                r.truncate,
                r.probes,
                if r.suites.is_empty() { "-".to_string() } else { r.suites.join(",") }
            );
            if r.checks.is_empty() {
                return out;
            }
            for c in &r.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                let _ = writeln!(out, "{tag} {:<32} [{}] {} ({} ms)", c.id, c.anchor, c.witness, c.elapsed.as_millis());
                if let Some(ce) = &c.counterexample {
                    let _ = writeln!(out, "  counterexample: {}", serde_json::to_string(ce).expect("json"));
                }
            }
            let count = |s| r.checks.iter().filter(|c| c.status == s).count();
            let _ = writeln!(
                out,
                "summary: {} passed, {} failed, {} skipped",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Skip)
            );
            out
        }
    }
}

fn check_input(cfg: &SuiteConfig, path: &PathBuf) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(match parse_input(&text)? {
        Input::Group(g) => Outcome::Pass(format!("group of order {}", g.load()?.order())),
        Input::Groupoid(g) => {
            let l = g.load()?;
            Outcome::Pass(format!("{}", l.groupoid))
        }
        Input::Category(spec) => {
            let c = FiniteCategory::from_spec(&spec)?;
            let v = c.validate();
            if v.is_valid() {
                Outcome::Pass(format!("category with {} morphisms", c.num_morphisms()))
            } else {
                Outcome::Fail("category axioms fail".into(), serde_json::to_value(&v).expect("json"))
            }
        }
        Input::Setup(spec) => {
            let (_, r) = crate::io::load_setup(&spec)?;
            if r.agree() {
                Outcome::Pass(format!("setup verdict {} under both criteria", r.diagonal_verdict()))
            } else {
                Outcome::Fail("diagonal and cancellative verdicts differ".into(), serde_json::to_value(&r).expect("json"))
            }
        }
        Input::Sheaf(spec) => {
            let m = spec.load(cfg.field)?;
            Outcome::Pass(format!("sheaf of dims {:?} over {}", m.dims(), m.field))
        }
        Input::Map(spec) => {
            let f = spec.load_standalone()?;
            Outcome::Pass(format!("functor from {} to {}", f.src, f.tgt))
        }
        Input::TwoCategory(spec) => {
            let c = crate::io::load_two_category(&spec)?;
            let b = mate_battery(&c)?;
            if b.holds() {
                Outcome::Pass(format!("{} adjunctions, {} mate round trips", b.adjunctions, b.checked))
            } else {
                Outcome::Fail("mate round trip fails".into(), json!({ "failures": b.failures }))
            }
        }
    })
}

fn point() -> GroupoidRef {
    Arc::new(FiniteGroupoid::point())
}

fn deloop(g: &FiniteGroup) -> GroupoidRef {
    Arc::new(FiniteGroupoid::delooping(g))
}

fn dims(m: &Sheaf) -> Value {
    json!({ "base": m.base.to_string(), "dims": m.dims(), "field": m.field.to_string() })
}

fn map_summary(f: &GroupoidFunctor) -> Value {
    json!({ "source": f.src.to_string(), "target": f.tgt.to_string(), "objects": f.obj_map })
}

fn setup_agreement(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let cats = [
        ("chain3", samples::chain3()),
        ("split-idempotent", samples::split_idempotent()),
        ("arrow-times-c2", samples::arrow_times_c2()),
    ];
    let (mut subsets, mut valid) = (0usize, 0usize);
    for (name, c) in &cats {
        let n = c.num_morphisms();
        for mask in 0u32..(1 << n) {
            let e: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let r = validate_setup(&GeometricSetup::listed(c.clone(), e.clone())?);
            subsets += 1;
            valid += usize::from(r.diagonal_verdict());
            if !r.agree() {
                let names: Vec<&str> = e.iter().map(|&m| c.mor_name(m)).collect();
                return Ok(Outcome::Fail(
                    format!("verdicts differ on {name}"),
                    json!({ "category": name, "exceptional": names, "diagonal": r.diagonal_verdict(), "cancellative": r.cancellative_verdict() }),
                ));
            }
        }
    }
    Ok(Outcome::Pass(format!("{subsets} subsets of 3 categories agree; {valid} are setups")))
}

fn corr_duals(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let s = GeometricSetup::new(FinSet::new(3), Exceptional::All);
    for x in 0..=3usize {
        let d = dual_data(&s, &x)?;
        let id = Span::identity(&s, &x);
        let l = span_iso(&s.base, &d.left_zigzag, &id);
        let r = span_iso(&s.base, &d.right_zigzag, &id);
        if l.is_none() || r.is_none() {
            return Ok(Outcome::Fail(
                format!("zigzag for |X| = {x} is not the identity span"),
                json!({ "x": x, "left_apex": d.left_zigzag.apex, "right_apex": d.right_zigzag.apex }),
            ));
        }
    }
    Ok(Outcome::Pass("X = 0..3: both zigzags span-isomorphic to id".into()))
}

fn cosets_fiber(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut pairs = 0;
    for name in ["s3", "s4", "d4", "q8", "c2xc4"] {
        let g = FiniteGroup::preset(name)?;
        let subs = g.subgroups_up_to_conjugacy();
        for h in &subs {
            for k in &subs {
                let dc = double_cosets(&g, h, k)?;
                pairs += 1;
                if !dc.matches_fiber_product() {
                    return Ok(Outcome::Fail(
                        format!("{name}: fiber product disagrees with H\\G/K"),
                        json!({ "group": name, "h": h, "k": k, "cosets": dc.cosets, "fiber_automorphisms": dc.fiber_automorphisms }),
                    ));
                }
            }
        }
    }
    Ok(Outcome::Pass(format!("{pairs} subgroup pairs over S3, S4, D4, Q8, C2xC4")))
}

fn six_fields(cfg: &SuiteConfig) -> Vec<Field> {
    let mut out = vec![Field::Rational, Field::Prime(5)];
    if !out.contains(&cfg.field) {
        out.push(cfg.field);
    }
    out
}

/// A map into `x`: a random cover, the identity, or a constant map from a random groupoid.
fn map_into(x: &GroupoidRef, field: Field, rng: &mut ChaCha8Rng) -> GroupoidFunctor {
    match rng.gen_range(0..3) {
        0 => random_surjection(x, rng),
        1 => GroupoidFunctor::identity(x),
        _ => {
            let y = random_groupoid(field, rng);
            GroupoidFunctor::constant(&y, x, rng.gen_range(0..x.num_objects()))
        }
    }
}

fn six_base_change(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let fields = six_fields(cfg);
    let mut count = 0;
    for &field in &fields {
        for i in 0..cfg.probes {
            let x = if i % 4 == 0 { point() } else { random_groupoid(field, rng) };
            let f = map_into(&x, field, rng);
            let g = map_into(&x, field, rng);
            let m = random_sheaf(&f.src, field, rng, 2);
            let (w, c) = base_change(&f, &g, &m)?;
            count += 1;
            if !c.invertible {
                return Ok(Outcome::Fail(
                    format!("base change map not invertible (instance {i} over {field})"),
                    json!({ "f": map_summary(&f), "g": map_summary(&g), "sheaf": dims(&m), "square": w.groupoid.to_string() }),
                ));
            }
        }
    }
    Ok(Outcome::Pass(format!("{count} squares over {} invertible", list(&fields))))
}

fn six_projection(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let fields = six_fields(cfg);
    let mut count = 0;
    for &field in &fields {
        for i in 0..cfg.probes {
            let x = random_groupoid(field, rng);
            let f = map_into(&x, field, rng);
            let m = random_sheaf(&x, field, rng, 2);
            let n = random_sheaf(&f.src, field, rng, 2);
            let left = projection_formula_left(&f, &m, &n)?;
            let right = projection_formula_right(&f, &n, &m)?;
            count += 2;
            if !left.invertible || !right.invertible {
                return Ok(Outcome::Fail(
                    format!("projection map not invertible (instance {i} over {field})"),
                    json!({ "f": map_summary(&f), "m": dims(&m), "n": dims(&n), "left": left.invertible, "right": right.invertible }),
                ));
            }
        }
    }
    Ok(Outcome::Pass(format!("{count} projection maps over {} invertible", list(&fields))))
}

fn list(fields: &[Field]) -> String {
    fields.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}

/// Kernel categories over the point and over `BC₂` with a handful of objects each.
fn kernel_cats(field: Field) -> Result<Vec<KernelCat>> {
    let pt = point();
    let c2 = FiniteGroup::cyclic(2);
    let b2 = deloop(&c2);
    let mut out = Vec::new();
    for base in [pt.clone(), b2.clone()] {
        if base.gate(field).is_err() {
            continue;
        }
        let mut kc = KernelCat::new(&base, field);
        kc.add_base();
        let mut sources: Vec<GroupoidFunctor> = vec![
            GroupoidFunctor::constant(&pt, &base, 0),
            GroupoidFunctor::constant(&Arc::new(FiniteGroupoid::discrete_n(2)), &base, 0),
        ];
        if base.num_arrows() == 1 {
            sources.push(GroupoidFunctor::to_point(&b2, &base));
            sources.push(GroupoidFunctor::to_point(&deloop(&FiniteGroup::cyclic(3)), &base));
        } else {
            let two = Arc::new(FiniteGroupoid::from_groups(&[c2.clone(), FiniteGroup::cyclic(1)]));
            sources.push(GroupoidFunctor::constant(&two, &base, 0));
        }
        for f in sources {
            if f.src.gate(field).is_ok() {
                kc.add_object(&f)?;
            }
        }
        out.push(kc);
    }
    Ok(out)
}

fn kernels_composition(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let cats = kernel_cats(cfg.field)?;
    for i in 0..cfg.probes {
        let kc = &cats[rng.gen_range(0..cats.len())];
        let objs: Vec<usize> = (0..4).map(|_| rng.gen_range(0..kc.num_objects())).collect();
        let mut cells = Vec::new();
        for w in objs.windows(2) {
            let k = random_sheaf(&kc.hom_base(w[0], w[1])?, cfg.field, rng, 2);
            cells.push(kc.cell(w[0], w[1], &k)?);
        }
        let assoc = kc.associator(&cells[0], &cells[1], &cells[2])?;
        let (l, r) = kc.unitors(&cells[0])?;
        let c01 = kc.comparison(&cells[0], &cells[1])?;
        if !(assoc.map.is_iso() && l.is_iso() && r.is_iso() && c01.is_iso()) {
            return Ok(Outcome::Fail(
                format!("triple {i}: a composition certificate is not invertible"),
                json!({
                    "base": kc.base.to_string(),
                    "objects": objs,
                    "kernels": cells.iter().map(|c| dims(&c.kernels[0])).collect::<Vec<_>>(),
                    "associator": assoc.map.is_iso(), "left_unitor": l.is_iso(), "right_unitor": r.is_iso(),
                }),
            ));
        }
    }
    Ok(Outcome::Pass(format!(
        "{} triples: associator, unitors and comparisons invertible over {}",
        cfg.probes, cfg.field
    )))
}

fn kernels_phi_psi(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let cats = kernel_cats(cfg.field)?;
    let mut count = 0;
    for kc in &cats {
        for tgt in 0..kc.num_objects() {
            for src in 0..kc.num_objects() {
                let w: Arc<WideProduct> = kc.wide(&[tgt, src])?;
                let cover = random_surjection(&w.groupoid, rng);
                let spans = [
                    (w.projections[0].clone(), w.projections[1].clone(), w.cell(0, 1)),
                    (
                        w.projections[0].after(&cover),
                        w.projections[1].after(&cover),
                        w.cell(0, 1).whisker_right(&cover),
                    ),
                ];
                for (a, b, beta) in &spans {
                    let n = random_sheaf(&kc.object(src).src, cfg.field, rng, 2);
                    let m = kc.phi_psi_map(tgt, src, a, b, beta, &n)?;
                    let k = kc.phi(tgt, src, a, b, beta)?;
                    let agrees = m.is_iso() && kc.psi(tgt, src, &k, &n)? == m.tgt;
                    count += 1;
                    if !agrees {
                        return Ok(Outcome::Fail(
                            "Ψ(Φ(span)) differs from push-pull".into(),
                            json!({ "base": kc.base.to_string(), "tgt": tgt, "src": src, "apex": a.src.to_string(), "n": dims(&n) }),
                        ));
                    }
                }
            }
        }
    }
    Ok(Outcome::Pass(format!("{count} embedded correspondences: Ψ∘Φ ≅ a_!b*")))
}

/// Maps of the duality battery, filtered by the gate.
/// Random duality probes stay at or below this total dimension.
const DUALITY_MAX_DIM: usize = 3;

fn duality_maps(field: Field) -> Vec<(&'static str, GroupoidFunctor)> {
    let pt = point();
    let s3 = FiniteGroup::symmetric(3);
    let c2 = FiniteGroup::cyclic(2);
    let bs3 = deloop(&s3);
    let bc2 = deloop(&c2);
    let (sub2, emb2) = s3.subgroup_group(&s3.generated(&[s3.parse_element("(12)").expect("element")]));
    let (sub3, emb3) = s3.subgroup_group(&s3.generated(&[s3.parse_element("(123)").expect("element")]));
    let maps = vec![
        ("BC2 -> *", GroupoidFunctor::to_point(&bc2, &pt)),
        ("* -> BC2", GroupoidFunctor::from_group_hom(&pt, &bc2, &[c2.identity()])),
        ("BS3 -> *", GroupoidFunctor::to_point(&bs3, &pt)),
        ("* -> BS3", GroupoidFunctor::from_group_hom(&pt, &bs3, &[s3.identity()])),
        ("BC2 -> BS3", GroupoidFunctor::from_group_hom(&deloop(&sub2), &bs3, &emb2)),
        ("BC3 -> BS3", GroupoidFunctor::from_group_hom(&deloop(&sub3), &bs3, &emb3)),
        ("{1,2} -> *", GroupoidFunctor::to_point(&Arc::new(FiniteGroupoid::discrete_n(2)), &pt)),
    ];
    maps.into_iter()
        .filter(|(_, f)| f.src.gate(field).is_ok() && f.tgt.gate(field).is_ok())
        .collect()
}

fn duality_battery(
    cfg: &SuiteConfig,
    rng: &mut ChaCha8Rng,
    what: &str,
    test: fn(&GroupoidFunctor, &Sheaf) -> Result<crate::kernel::DualityReport>,
) -> Result<Outcome> {
    let maps = duality_maps(cfg.field);
    let mut count = 0;
    for (name, f) in &maps {
        let mut family = vec![Sheaf::unit(&f.src, cfg.field)];
        family.extend((0..2).map(|_| random_sheaf_bounded(&f.src, cfg.field, rng, 2, DUALITY_MAX_DIM)));
        for p in &family {
            let rep = test(f, p)?;
            count += 1;
            if !rep.passes() {
                return Ok(Outcome::Fail(
                    format!("{what} fails on {name}"),
                    json!({ "map": name, "sheaf": dims(p), "triangles": [rep.triangles.left, rep.triangles.right], "involutive": rep.involutive }),
                ));
            }
        }
    }
    Ok(Outcome::Pass(format!(
        "{count} (map, sheaf) pairs on {} maps: triangles hold, D∘D ≅ id",
        maps.len()
    )))
}

fn duality_suave(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    duality_battery(cfg, rng, "suave duality", suave_test)
}

fn duality_prim(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    duality_battery(cfg, rng, "prim duality", prim_test)
}

fn duality_etale_proper(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let maps = duality_maps(cfg.field);
    for (name, f) in &maps {
        let probes: Vec<Sheaf> = (0..2).map(|_| random_sheaf(&f.tgt, cfg.field, rng, 2)).collect();
        let rep = etale_proper_test(f, &probes)?;
        if !(rep.etale() && rep.proper()) {
            return Ok(Outcome::Fail(
                format!("{name} fails the étale or proper test"),
                json!({ "map": name, "etale": rep.etale(), "proper": rep.proper(), "probes": probes.iter().map(dims).collect::<Vec<_>>() }),
            ));
        }
    }
    Ok(Outcome::Pass(format!("{} maps étale and proper", maps.len())))
}

fn descent_check(cover: &GroupoidFunctor, family: &[Sheaf], field: Field, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let cat = DescentCategory::new(cover, field)?;
    let data = family
        .iter()
        .map(|m| cat.conjugate(&cat.comparison(m)?, rng))
        .collect::<Result<Vec<_>>>()?;
    let cert = descent_comparison(&cat, family, &data)?;
    if cert.equivalence() {
        let n = family.len();
        Ok(Outcome::Pass(format!(
            "{n}x{n} hom dimensions equal, {} twisted data descend",
            cert.data_checked
        )))
    } else {
        Ok(Outcome::Fail(
            "comparison is not an equivalence".into(),
            json!({ "cover": map_summary(cover), "certificate": cert }),
        ))
    }
}

fn descent_points(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let y: GroupoidRef = Arc::new(FiniteGroupoid::discrete_n(2));
    let pt = point();
    let family = vec![
        Sheaf::unit(&pt, cfg.field),
        Sheaf::constant(&pt, cfg.field, 2),
        Sheaf::constant(&pt, cfg.field, 3),
    ];
    descent_check(&GroupoidFunctor::to_point(&y, &pt), &family, cfg.field, rng)
}

fn descent_bc2(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let c2 = FiniteGroup::cyclic(2);
    let b = deloop(&c2);
    b.gate(cfg.field)?;
    let f = cfg.field;
    let sign = Sheaf::from_representation(
        &b,
        f,
        vec![crate::Matrix::from_ints(f, 1, 1, &[1]), crate::Matrix::from_ints(f, 1, 1, &[-1])],
    )?;
    let triv = Sheaf::unit(&b, f);
    let family = vec![triv.clone(), sign.clone(), triv.direct_sum(&sign)];
    descent_check(&GroupoidFunctor::from_group_hom(&point(), &b, &[0]), &family, f, rng)
}

fn descent_bs3(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let b = deloop(&FiniteGroup::symmetric(3));
    b.gate(cfg.field)?;
    let family = irreducibles_s3(&b, cfg.field)?;
    descent_check(&GroupoidFunctor::from_group_hom(&point(), &b, &[0]), &family, cfg.field, rng)
}

fn descent_random(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let x = random_groupoid(cfg.field, rng);
    let cover = random_surjection(&x, rng);
    let family: Vec<Sheaf> = (0..3).map(|_| random_sheaf(&x, cfg.field, rng, 2)).collect();
    descent_check(&cover, &family, cfg.field, rng)
}

fn mates_exhaustive(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let c = sample_two_category();
    let b = mate_battery(&c)?;
    if b.holds() && b.max_parallel_twos <= 4 {
        Ok(Outcome::Pass(format!(
            "{} objects, {} adjunctions, {} squares, {} round trips; at most {} 2-cells per pair",
            c.objects.len(),
            b.adjunctions,
            b.squares,
            b.checked,
            b.max_parallel_twos
        )))
    } else {
        Ok(Outcome::Fail("mate round trip fails".into(), serde_json::to_value(&b).expect("json")))
    }
}

fn s3_c2() -> Result<Subgroup> {
    Subgroup::generated_by(&FiniteGroup::symmetric(3), &["(12)"])
}

fn hecke_models(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = s3_c2()?;
    let alg = hecke_algebra(&k, &k.unit_weight(cfg.field))?;
    let g = &k.group;
    let e = alg.support.iter().position(|&s| s == g.identity()).expect("identity coset");
    let w = 1 - e;
    let sq = &alg.constants[w][w];
    let f = cfg.field;
    let relation = alg.dim() == 2 && sq[e] == f.int(2) && sq[w] == f.one();
    let coef = |c: &crate::Scalar| if c.is_one() { String::new() } else { c.to_string() };
    let text = format!("dim H = {}; T_w^2 = {}T_e + {}T_w", alg.dim(), coef(&sq[e]), coef(&sq[w]));
    if relation && alg.certificate.holds() {
        Ok(Outcome::Pass(format!("{text}; models A and B isomorphic")))
    } else {
        Ok(Outcome::Fail(text, serde_json::to_value(&alg.certificate).expect("json")))
    }
}

fn hecke_involution(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = s3_c2()?;
    let alg = hecke_algebra(&k, &k.unit_weight(cfg.field))?;
    let r = involution_report(&alg)?;
    if r.holds() {
        Ok(Outcome::Pass("ι anti-multiplicative, involutive, unital; ι(T_w) = T_{w⁻¹}".into()))
    } else {
        Ok(Outcome::Fail("ι fails".into(), serde_json::to_value(&r).expect("json")))
    }
}

fn hecke_prim(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let r = prim_duality_on_hecke(&s3_c2()?, cfg.field)?;
    if r.holds() {
        Ok(Outcome::Pass(format!("prim duality of cInd 1 induces ι on all {} basis elements", r.dim)))
    } else {
        Ok(Outcome::Fail("prim duality differs from ι".into(), serde_json::to_value(&r).expect("json")))
    }
}

fn sections_kunneth(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let pairs = (cfg.probes / 5).max(1);
    for i in 0..pairs {
        let m = random_pair(cfg.field, rng);
        let n = random_pair(cfg.field, rng);
        let k = kunneth(&m, &n)?;
        if !k.holds() {
            return Ok(Outcome::Fail(
                format!("pair {i}: Γ_c of the product has the wrong dimension"),
                json!({ "m": dims(&m), "n": dims(&n), "report": k }),
            ));
        }
    }
    Ok(Outcome::Pass(format!("{pairs} pairs: dim Γ_c(X×Y) = dim Γ_c(X)·dim Γ_c(Y)")))
}

fn sections_unit(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut checked = Vec::new();
    for name in ["trivial", "c2", "c3", "s3", "s4", "d4", "q8", "c2xc4"] {
        let b = deloop(&FiniteGroup::preset(name)?);
        if b.gate(cfg.field).is_err() {
            continue;
        }
        let gs = global_sections(&Sheaf::unit(&b, cfg.field))?;
        if gs.dims() != (1, 1) {
            return Ok(Outcome::Fail(
                format!("Γ(*/{name}, 1) has dimension {:?}", gs.dims()),
                json!({ "group": name, "gamma": gs.dims().0, "gamma_c": gs.dims().1 }),
            ));
        }
        checked.push(name);
    }
    if checked.is_empty() {
        return Err(Error::Gate(format!("no preset group is admissible over {}", cfg.field)));
    }
    Ok(Outcome::Pass(format!("Γ(*/G, 1) = Γ_c(*/G, 1) = 1 for G in {}", checked.join(", "))))
}

fn sections_pyramid(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    for n in 0..=cfg.truncate {
        let s = pyramid_sections(n);
        if !(s.symmetric() && s.functorial() && s.comparison_natural()) {
            return Ok(Outcome::Fail(
                format!("pyramid level {n}"),
                json!({ "n": n, "symmetric": s.symmetric(), "functorial": s.functorial(), "comparison": s.comparison_natural() }),
            ));
        }
    }
    Ok(Outcome::Pass(format!("n ≤ {}: t ≅ rev∘t, s and t functorial, t → s natural", cfg.truncate)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suites: &[&str]) -> SuiteConfig {
        SuiteConfig {
            suites: suites.iter().map(|s| s.to_string()).collect(),
            probes: 5,
            truncate: 3,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn empty_selection_is_empty_passing_report() {
        let r = run_suite(&quick(&[])).unwrap();
        assert!(r.passed() && r.checks.is_empty());
        let text = emit_report(&r, Format::Text);
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite(&quick(&["nope"])).is_err());
    }

    #[test]
    fn corr_and_hecke_pass() {
        let r = run_suite(&quick(&["corr", "hecke"])).unwrap();
        assert!(r.passed(), "{}", emit_report(&r, Format::Text));
        let w = &r.check("hecke.s3-c2").unwrap().witness;
        assert!(w.contains("T_w^2 = 2T_e + T_w"), "{w}");
    }

    #[test]
    fn json_is_deterministic_and_sorted() {
        let cfg = quick(&["sections", "setup"]);
        let a = emit_report(&run_suite(&cfg).unwrap(), Format::Json);
        let b = emit_report(&run_suite(&cfg).unwrap(), Format::Json);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn gate_skips_hecke_in_characteristic_three() {
        let cfg = SuiteConfig {
            field: Field::Prime(3),
            ..quick(&["hecke"])
        };
        let r = run_suite(&cfg).unwrap();
        assert!(r.passed());
        assert!(r.checks.iter().all(|c| c.status == Status::Skip));
    }

    #[test]
    fn failure_renders_counterexample() {
        let r = Report {
            schema: "finsix-report/1",
            seed: 0,
            field: "q".into(),
            truncate: 0,
            probes: 0,
            suites: vec!["x".into()],
            passed: false,
            checks: vec![CheckRecord {
                id: "x.y".into(),
                anchor: "z".into(),
                status: Status::Fail,
                witness: "broken".into(),
                counterexample: Some(json!({ "triple": [0, 1, 2] })),
                elapsed: Duration::ZERO,
            }],
        };
        assert!(!r.passed());
        let t = emit_report(&r, Format::Text);
        assert!(t.contains("counterexample: {\"triple\":[0,1,2]}"));
    }

    #[test]
    fn every_check_has_one_anchor() {
        let mut ids = std::collections::BTreeSet::new();
        for s in ALL_SUITES {
            for (id, anchor) in suite_checks(s).unwrap() {
                assert!(id.starts_with(s) && !anchor.is_empty());
                assert!(ids.insert(id));
            }
        }
    }
}
