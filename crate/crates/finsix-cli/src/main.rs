use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finsix::adjunction::{
    all_adjunctions, mate_battery, mate_lambda, mate_rho, pointwise_audit, sample_two_category, verify, Adjunction,
    MateSquare, TableTwoCat,
};
use finsix::category::samples;
use finsix::corr::{validate_setup, Exceptional, GeometricSetup, SetupReport};
use finsix::group::FiniteGroup;
use finsix::groupoid::GroupoidFunctor;
use finsix::hecke::{hecke_algebra, hecke_table, involution_report, Subgroup};
use finsix::io::{parse_input, GroupoidSpec, Input, LoadedGroupoid, MapSpec};
use finsix::kernel::{etale_proper_test, prim_test, suave_test, KernelCat};
use finsix::sheaf::{global_sections, random_sheaf, Sheaf};
use finsix::simplicial::pyramid_sections;
use finsix::suite::{emit_report, run_suite, Format, SuiteConfig, ALL_SUITES};
use finsix::{Error, Field, Result};

#[derive(Parser, Debug)]
#[command(name = "finsix", version, about = "Exact checks of the six-functor calculus on finite groupoids")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug)]
struct Global {
    /// Suites to run (repeatable or comma separated); all when absent.
    #[arg(long, global = true, value_delimiter = ',')]
    suite: Vec<String>,
    /// Coefficient field: `q` or `fp:P`.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest pyramid level.
    #[arg(long, global = true, default_value_t = 5)]
    truncate: usize,
    /// Random instances per battery.
    #[arg(long, global = true, default_value_t = 100)]
    probes: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Input files (repeatable).
    #[arg(long, global = true)]
    input: Vec<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run check suites (the default).
    Run,
    /// Geometric setup verdicts under both forms of the last axiom.
    Setup {
        #[command(subcommand)]
        action: SetupCmd,
    },
    /// The kernel 2-category over a base groupoid.
    Kernels {
        #[command(subcommand)]
        action: KernelsCmd,
    },
    /// Adjunctions and mates in a strict 2-category.
    Adj {
        #[command(subcommand)]
        action: AdjCmd,
    },
    /// Hecke algebras of finite groups.
    Hecke {
        #[command(subcommand)]
        action: HeckeCmd,
    },
    /// The pyramid sections s and t.
    Pyramid {
        /// Level; defaults to --truncate.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Global and compactly supported sections of sheaf inputs, or of 1 on preset groups.
    Sections,
}

#[derive(Subcommand, Debug)]
enum SetupCmd {
    /// Cross-check table for setup inputs, or for the sample categories.
    Table,
}

#[derive(Subcommand, Debug)]
enum KernelsCmd {
    Verify {
        /// Base groupoid (group or groupoid file).
        #[arg(long)]
        base: PathBuf,
        /// Maps into the base.
        #[arg(long, num_args = 1..)]
        maps: Vec<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct AdjData {
    #[arg(long)]
    left: Option<String>,
    #[arg(long)]
    right: Option<String>,
    #[arg(long)]
    unit: Option<String>,
    #[arg(long)]
    counit: Option<String>,
}

#[derive(Subcommand, Debug)]
enum AdjCmd {
    /// Triangle identities for given data, or every adjunction of the table.
    Verify {
        #[command(flatten)]
        data: AdjData,
    },
    /// Mates: the exhaustive battery, or ρ and λ of one 2-cell.
    Mate {
        /// Left adjoint of the first adjunction.
        #[arg(long)]
        left: Option<String>,
        /// Left adjoint of the second adjunction.
        #[arg(long)]
        left2: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// A 2-cell `f′∘a ⇒ b∘f`.
        #[arg(long)]
        cell: Option<String>,
    },
    /// Pointwise criterion for a right adjoint of one 1-cell.
    Audit {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum HeckeCmd {
    /// Structure constants and ι on the double coset basis.
    Table {
        #[arg(long)]
        group: String,
        /// Generators of the subgroup, e.g. '(12)'; comma separated or repeated.
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<String>,
    },
}

/// Failure kinds: input problems exit with 2, alarms with 1.
enum Fail {
    Input(Error),
    Alarm(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Theorem { anchor, detail } => Fail::Alarm(format!("theorem violation [{anchor}]: {detail}")),
            e => Fail::Input(e),
        }
    }
}

struct Ctx {
    field: Field,
    format: OutFormat,
    global: Global,
}

impl Ctx {
    fn emit(&self, text: String, value: Value) {
        match self.format {
            OutFormat::Text => print!("{text}"),
            OutFormat::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field: Field = match cli.global.field.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let ctx = Ctx {
        field,
        format: cli.global.format,
        global: cli.global,
    };
    let out = match cli.command.unwrap_or(Command::Run) {
        Command::Run => run(&ctx),
        Command::Setup { action: SetupCmd::Table } => setup_table(&ctx),
        Command::Kernels {
            action: KernelsCmd::Verify { base, maps },
        } => kernels_verify(&ctx, &base, &maps),
        Command::Adj { action } => adj(&ctx, action),
        Command::Hecke {
            action: HeckeCmd::Table { group, subgroup },
        } => hecke(&ctx, &group, &subgroup),
        Command::Pyramid { n } => pyramid(&ctx, n.unwrap_or(ctx.global.truncate)),
        Command::Sections => sections(&ctx),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Alarm(msg)) => {
            eprintln!("alarm: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_input(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run(ctx: &Ctx) -> std::result::Result<(), Fail> {
    let g = &ctx.global;
    let cfg = SuiteConfig {
        suites: if g.suite.is_empty() {
            ALL_SUITES.iter().map(|s| s.to_string()).collect()
        } else {
            g.suite.iter().filter(|s| !s.is_empty() && s.as_str() != "none").cloned().collect()
        },
        inputs: g.input.clone(),
        field: ctx.field,
        truncate: g.truncate,
        probes: g.probes,
        seed: g.seed,
        format: match ctx.format {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        },
    };
    let report = run_suite(&cfg)?;
    print!("{}", emit_report(&report, cfg.format));
    let first = report.failures().next().map(|f| format!("{} [{}]", f.id, f.anchor));
    let count = report.failures().count();
    match first {
        None => Ok(()),
        Some(f) => Err(Fail::Alarm(format!("{count} failing check(s), first {f}"))),
    }
}

fn verdict_row(name: &str, e: &str, r: &SetupReport) -> (String, Value) {
    let b = |x: bool| if x { "yes" } else { "no" };
    let text = format!(
        "{:<20} {:<12} {:>5} {:>5} {:>5} {:>5} {:>5} {:>8} {:>8} {:>5}\n",
        name,
        e,
        b(r.contains_isos),
        b(r.composition_closed),
        b(r.base_change_closed),
        b(r.diagonals_in_e),
        b(r.right_cancellative),
        b(r.diagonal_verdict()),
        b(r.cancellative_verdict()),
        b(r.agree())
    );
    let value = json!({
        "category": name, "exceptional": e, "report": r,
        "diagonal_verdict": r.diagonal_verdict(), "cancellative_verdict": r.cancellative_verdict(), "agree": r.agree(),
    });
    (text, value)
}

fn setup_table(ctx: &Ctx) -> std::result::Result<(), Fail> {
    let mut text = format!(
        "{:<20} {:<12} {:>5} {:>5} {:>5} {:>5} {:>5} {:>8} {:>8} {:>5}\n",
        "category", "E", "isos", "comp", "bc", "diag", "canc", "diag-ok", "canc-ok", "agree"
    );
    let mut rows = Vec::new();
    let mut disagree = 0;
    let push = |name: &str, e: &str, r: &SetupReport, text: &mut String, rows: &mut Vec<Value>, disagree: &mut usize| {
        let (t, v) = verdict_row(name, e, r);
        text.push_str(&t);
        rows.push(v);
        *disagree += usize::from(!r.agree());
    };
    if ctx.global.input.is_empty() {
        let cats = [
            ("chain3", samples::chain3()),
            ("split-idempotent", samples::split_idempotent()),
            ("arrow-times-c2", samples::arrow_times_c2()),
            ("divisors12", samples::divisors12()),
        ];
        for (name, c) in &cats {
            push(name, "isomorphisms", &validate_setup(&GeometricSetup::new(c.clone(), Exceptional::Isomorphisms)), &mut text, &mut rows, &mut disagree);
            push(name, "all", &validate_setup(&GeometricSetup::new(c.clone(), Exceptional::All)), &mut text, &mut rows, &mut disagree);
            let n = c.num_morphisms();
            if n <= 8 {
                let (mut agree, mut valid) = (0usize, 0usize);
                for mask in 0u32..(1 << n) {
                    let s = GeometricSetup::listed(c.clone(), (0..n).filter(|i| mask >> i & 1 == 1))?;
                    let r = validate_setup(&s);
                    agree += usize::from(r.agree());
                    valid += usize::from(r.diagonal_verdict());
                    if !r.agree() {
                        disagree += 1;
                    }
                }
                let line = format!("{name:<20} every subset: {agree}/{} agree, {valid} setups\n", 1u32 << n);
                text.push_str(&line);
                rows.push(json!({ "category": name, "subsets": 1u32 << n, "agree": agree, "setups": valid }));
            }
        }
    } else {
        for path in &ctx.global.input {
            let Input::Setup(spec) = read_input(path)? else {
                return Err(Fail::Input(Error::Parse(format!("{} is not a setup", path.display()))));
            };
            let (_, r) = finsix::io::load_setup(&spec)?;
            let e: Vec<&str> = spec
                .morphisms
                .iter()
                .filter(|m| m.exceptional.unwrap_or(false))
                .map(|m| m.id.as_str())
                .collect();
            push(&path.display().to_string(), &format!("{{{}}}", e.join(",")), &r, &mut text, &mut rows, &mut disagree);
        }
    }
    ctx.emit(text, json!({ "rows": rows }));
    if disagree > 0 {
        return Err(Fail::Alarm(format!("[setup-cancellative] {disagree} disagreeing verdicts")));
    }
    Ok(())
}

fn load_base(path: &Path) -> Result<(LoadedGroupoid, GroupoidSpec)> {
    let spec = match read_input(path)? {
        Input::Group(g) => GroupoidSpec::Delooping { group: g },
        Input::Groupoid(g) => g,
        _ => return Err(Error::Parse(format!("{} is not a group or groupoid", path.display()))),
    };
    Ok((spec.load()?, spec))
}

fn load_map(path: &Path, base: &LoadedGroupoid) -> Result<GroupoidFunctor> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let spec: MapSpec = match parse_input(&text) {
        Ok(Input::Map(m)) => m,
        Ok(_) => return Err(Error::Parse(format!("{} is not a map", path.display()))),
        Err(_) => serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
    };
    spec.load(base)
}

fn kernels_verify(ctx: &Ctx, base: &Path, maps: &[PathBuf]) -> std::result::Result<(), Fail> {
    let (lb, _) = load_base(base)?;
    lb.groupoid.gate(ctx.field)?;
    let fs = maps.iter().map(|p| load_map(p, &lb)).collect::<Result<Vec<_>>>()?;
    let mut kc = KernelCat::new(&lb.groupoid, ctx.field);
    kc.add_base();
    for f in &fs {
        f.src.gate(ctx.field)?;
        kc.add_object(f)?;
    }
    let mut rng = finsix::suite::stream(ctx.global.seed, "kernels.verify");
    let mut text = format!("kernel 2-category over {} with {} objects\n", lb.groupoid, kc.num_objects());
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    let n = kc.num_objects();
    let mut row = |name: String, ok: bool, detail: String, text: &mut String| {
        text.push_str(&format!("{} {name:<28} {detail}\n", if ok { "PASS" } else { "FAIL" }));
        rows.push(json!({ "check": name, "pass": ok, "detail": detail }));
        if !ok {
            bad.push(name);
        }
    };
    for x in 0..n {
        let id = kc.kernel_identity(x)?;
        row(format!("identity[{x}]"), true, format!("Δ_!1 has dims {:?}", id.dims()), &mut text);
    }
    for t in 0..n {
        for s in 0..n {
            let m = random_sheaf(&kc.hom_base(t, s)?, ctx.field, &mut rng, 2);
            let (l, r) = kc.unitors(&kc.cell(t, s, &m)?)?;
            row(format!("unitors[{t},{s}]"), l.is_iso() && r.is_iso(), format!("kernel dims {:?}", m.dims()), &mut text);
        }
    }
    let mut triples = 0;
    let mut assoc_ok = true;
    for i in 0..ctx.global.probes.min(n.pow(4)).max(1) {
        let objs = [i % n, (i / n) % n, (i / n / n) % n, (i / n / n / n) % n];
        let cells = objs
            .windows(2)
            .map(|w| {
                let k = random_sheaf(&kc.hom_base(w[0], w[1])?, ctx.field, &mut rng, 2);
                kc.cell(w[0], w[1], &k)
            })
            .collect::<Result<Vec<_>>>()?;
        assoc_ok &= kc.associator(&cells[0], &cells[1], &cells[2])?.map.is_iso();
        triples += 1;
    }
    row("associator".into(), assoc_ok, format!("{triples} random triples"), &mut text);
    for (i, f) in fs.iter().enumerate() {
        let x = i + 1;
        let p = random_sheaf(&f.src, ctx.field, &mut rng, 2);
        let sv = suave_test(f, &p)?;
        row(format!("suave[{x}]"), sv.passes(), format!("dual dims {:?}", sv.dual.dims()), &mut text);
        let pr = prim_test(f, &p)?;
        row(format!("prim[{x}]"), pr.passes(), format!("dual dims {:?}", pr.dual.dims()), &mut text);
        let probes = vec![random_sheaf(&f.tgt, ctx.field, &mut rng, 2)];
        let ep = etale_proper_test(f, &probes)?;
        row(format!("etale-proper[{x}]"), ep.etale() && ep.proper(), format!("étale {} proper {}", ep.etale(), ep.proper()), &mut text);
    }
    ctx.emit(text, json!({ "base": lb.groupoid.to_string(), "objects": n, "checks": rows }));
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Fail::Alarm(format!("[kernel-composition] failing: {}", bad.join(", "))))
    }
}

fn two_category(ctx: &Ctx) -> Result<TableTwoCat> {
    match ctx.global.input.first() {
        None => Ok(sample_two_category()),
        Some(p) => match read_input(p)? {
            Input::TwoCategory(spec) => finsix::io::load_two_category(&spec),
            _ => Err(Error::Parse(format!("{} is not a two_category", p.display()))),
        },
    }
}

fn one(c: &TableTwoCat, name: &str) -> Result<usize> {
    c.one_index(name).ok_or_else(|| Error::Structural(format!("unknown 1-cell {name}")))
}

fn two(c: &TableTwoCat, name: &str) -> Result<usize> {
    c.two_index(name).ok_or_else(|| Error::Structural(format!("unknown 2-cell {name}")))
}

fn adj_names(c: &TableTwoCat, a: &Adjunction<TableTwoCat>) -> Value {
    json!({
        "left": c.ones[a.left].name, "right": c.ones[a.right].name,
        "unit": c.twos[a.unit].name, "counit": c.twos[a.counit].name,
    })
}

fn adj(ctx: &Ctx, action: AdjCmd) -> std::result::Result<(), Fail> {
    let c = two_category(ctx)?;
    match action {
        AdjCmd::Verify { data } => {
            if let (Some(l), Some(r), Some(u), Some(e)) = (&data.left, &data.right, &data.unit, &data.counit) {
                let a = Adjunction::<TableTwoCat> {
                    left: one(&c, l)?,
                    right: one(&c, r)?,
                    unit: two(&c, u)?,
                    counit: two(&c, e)?,
                };
                let v = verify(&c, &a)?;
                ctx.emit(
                    format!("{l} ⊣ {r}: first triangle {}, second triangle {}\n", v.left, v.right),
                    json!({ "adjunction": adj_names(&c, &a), "left_triangle": v.left, "right_triangle": v.right }),
                );
                if !v.holds() {
                    return Err(Fail::Input(Error::Axiom("triangle identities fail".into())));
                }
            } else {
                let adjs = all_adjunctions(&c);
                let mut text = format!("{} adjunctions\n", adjs.len());
                for a in &adjs {
                    text.push_str(&format!(
                        "{} ⊣ {}  η = {}  ε = {}\n",
                        c.ones[a.left].name, c.ones[a.right].name, c.twos[a.unit].name, c.twos[a.counit].name
                    ));
                }
                let list: Vec<Value> = adjs.iter().map(|a| adj_names(&c, a)).collect();
                ctx.emit(text, json!({ "adjunctions": list }));
            }
            Ok(())
        }
        AdjCmd::Mate { left, left2, a, b, cell } => {
            if let (Some(l), Some(l2), Some(a), Some(b), Some(phi)) = (left, left2, a, b, cell) {
                let adjs = all_adjunctions(&c);
                let pick = |name: &str| -> Result<&Adjunction<TableTwoCat>> {
                    let f = one(&c, name)?;
                    adjs.iter()
                        .find(|x| x.left == f)
                        .ok_or_else(|| Error::Precondition(format!("{name} has no right adjoint")))
                };
                let sq = MateSquare {
                    adj: pick(&l)?,
                    adj2: pick(&l2)?,
                    a: one(&c, &a)?,
                    b: one(&c, &b)?,
                };
                let phi = two(&c, &phi)?;
                let rho = mate_rho(&c, &sq, &phi)?;
                let back = mate_lambda(&c, &sq, &rho)?;
                let (pn, rn, bn) = (&c.twos[phi].name, &c.twos[rho].name, &c.twos[back].name);
                ctx.emit(
                    format!("ρ({pn}) = {rn}\nλ(ρ({pn})) = {bn}\n"),
                    json!({ "cell": pn, "rho": rn, "lambda_rho": bn, "round_trip": back == phi }),
                );
                if back != phi {
                    return Err(Fail::Alarm(format!("[mates] λ(ρ({pn})) ≠ {pn}")));
                }
                return Ok(());
            }
            let bat = mate_battery(&c)?;
            ctx.emit(
                format!(
                    "{} adjunctions, {} squares, {} round trips, {} failures; at most {} 2-cells per parallel pair\n",
                    bat.adjunctions,
                    bat.squares,
                    bat.checked,
                    bat.failures.len(),
                    bat.max_parallel_twos
                ),
                serde_json::to_value(&bat).expect("json"),
            );
            if bat.holds() {
                Ok(())
            } else {
                Err(Fail::Alarm(format!("[mates] {}", bat.failures.join("; "))))
            }
        }
        AdjCmd::Audit { map, budget } => {
            let f = one(&c, &map)?;
            let zs: Vec<usize> = (0..c.objects.len()).collect();
            let r = pointwise_audit(&c, f, &zs, budget)?;
            let g = r.candidate.map(|(g, _)| c.ones[g].name.clone());
            ctx.emit(
                format!(
                    "{map}: pointwise criterion {} (a: {}, b: {}), direct search {}, candidate {}, agree {}\n",
                    r.criterion,
                    r.condition_a,
                    r.condition_b,
                    r.direct.is_some(),
                    g.as_deref().unwrap_or("-"),
                    r.agrees
                ),
                serde_json::to_value(&r).expect("json"),
            );
            if r.agrees {
                Ok(())
            } else {
                Err(Fail::Alarm("[pointwise-adjoint] criterion and direct search disagree".into()))
            }
        }
    }
}

fn hecke(ctx: &Ctx, group: &str, gens: &[String]) -> std::result::Result<(), Fail> {
    let g = FiniteGroup::preset(group)?;
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let k = Subgroup::generated_by(&g, &refs)?;
    let alg = hecke_algebra(&k, &k.unit_weight(ctx.field))?;
    let table = hecke_table(&alg)?;
    let inv = involution_report(&alg)?;
    let mut text = format!(
        "H({group}, <{}>, 1) over {}: dim {}\nbasis: {}\n",
        gens.join(", "),
        ctx.field,
        alg.dim(),
        table.basis.join(", ")
    );
    for (k, v) in &table.products {
        let rhs = if v.is_empty() { "0".to_string() } else { v.join(" + ") };
        text.push_str(&format!("{k} = {rhs}\n"));
    }
    for (b, i) in table.basis.iter().zip(&table.involution) {
        text.push_str(&format!("ι({b}) = {i}\n"));
    }
    text.push_str(&format!(
        "models isomorphic: {}; ι anti-automorphism: {}; involutive: {}\n",
        alg.certificate.holds(),
        inv.anti_multiplicative,
        inv.involutive
    ));
    ctx.emit(
        text,
        json!({ "group": group, "subgroup": gens, "field": ctx.field.to_string(), "table": table, "certificate": alg.certificate, "involution": inv }),
    );
    if alg.certificate.holds() && inv.holds() {
        Ok(())
    } else {
        Err(Fail::Alarm("[hecke-models] certificate fails".into()))
    }
}

fn pyramid(ctx: &Ctx, n: usize) -> std::result::Result<(), Fail> {
    let p = pyramid_sections(n);
    let mut text = format!("pyramid sections at n = {n}\ncell     s   t\n");
    for (key, s) in &p.s.values {
        text.push_str(&format!("({key:<5}) {s:>3} {:>3}\n", p.t.values[key]));
    }
    for tr in &p.t.transitions {
        text.push_str(&format!(
            "t: {:?} -> {:?} shape {} map {:?}\n",
            tr.from, tr.to, tr.shape, tr.map.values
        ));
    }
    let (sym, fun, nat) = (p.symmetric(), p.functorial(), p.comparison_natural());
    text.push_str(&format!("t ≅ rev∘t: {sym}; functorial: {fun}; t → s natural: {nat}\n"));
    ctx.emit(text, json!({ "sections": p, "symmetric": sym, "functorial": fun, "comparison_natural": nat }));
    if sym && fun && nat {
        Ok(())
    } else {
        Err(Fail::Alarm("[pyramid-symmetry] section data fails".into()))
    }
}

fn sections(ctx: &Ctx) -> std::result::Result<(), Fail> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut add = |name: String, m: &Sheaf, text: &mut String| -> Result<()> {
        let (g, gc) = global_sections(m)?.dims();
        text.push_str(&format!("{name:<24} dim Γ = {g}  dim Γ_c = {gc}\n"));
        rows.push(json!({ "name": name, "gamma": g, "gamma_c": gc }));
        Ok(())
    };
    if ctx.global.input.is_empty() {
        for name in ["trivial", "c2", "c3", "s3", "s4", "d4", "q8", "c2xc4"] {
            let b = std::sync::Arc::new(finsix::groupoid::FiniteGroupoid::delooping(&FiniteGroup::preset(name)?));
            if b.gate(ctx.field).is_ok() {
                add(format!("1 on */{name}"), &Sheaf::unit(&b, ctx.field), &mut text)?;
            }
        }
    } else {
        for p in &ctx.global.input {
            let Input::Sheaf(spec) = read_input(p)? else {
                return Err(Fail::Input(Error::Parse(format!("{} is not a sheaf", p.display()))));
            };
            add(p.display().to_string(), &spec.load(ctx.field)?, &mut text)?;
        }
    }
    ctx.emit(text, json!({ "sections": rows }));
    Ok(())
}
