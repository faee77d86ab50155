use clap::{Parser, Subcommand, ValueEnum};
use permtt::field::Mat;
use permtt::group::{subgroups, FiniteGroup, GroupSpec, Subgroup, DEFAULT_ORDER_CAP};
use permtt::sections::{Reduction, SectionCategory, SectionMorphism, SpanRelation};
use permtt::spectrum::{components, dimension, fold, glue_category, GluedSkeleton, Level, SectionModel, Skeleton};
use permtt::twisted::{present_rloc, Elab};
use permtt::verify::{self, Suite};
use permtt::{Error, Result};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser, Debug)]
#[command(name = "permtt", version, about = "Spectra of permutation-module homotopy categories of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Group: `cyclic:n`, `dihedral:2n`, `quaternion`, `ea:p:r`, products
    /// joined by `*`, or a JSON object.
    #[arg(long, global = true, default_value = "ea:2:2")]
    group: String,

    #[arg(long, global = true, default_value_t = 2)]
    prime: u32,

    /// Subgroup by label (`<r2,s>`), comma-separated element names, or
    /// `trivial` / `full`.
    #[arg(long, global = true, default_value = "full")]
    subgroup: String,

    #[arg(long, global = true, value_enum, default_value_t = LevelArg::Rational)]
    level: LevelArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    cap_order: usize,

    #[arg(long, global = true, default_value_t = permtt::spectrum::DEFAULT_RANK_CAP)]
    cap_rank: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Morphism classes used for homs and relations.
    #[arg(long, global = true, default_value = "center-target")]
    reduction: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elementary abelian sections, and with `--homs` every nonempty hom set.
    Sections {
        #[arg(long)]
        homs: bool,
    },
    /// Maximal sections up to conjugacy.
    Maxel,
    /// Maximal span relations between maximal sections.
    Relations,
    /// Presentation of the localized ring over the open of `--subgroup`.
    Ring,
    /// Skeleton of an elementary abelian group.
    Skeleton,
    /// Glued skeleton of any finite group.
    Glue,
    /// Irreducible components with their generic points.
    Components,
    /// Krull dimension and related counts.
    Dim,
    /// Quotient of an elementary abelian skeleton by a matrix, rows split by `;`.
    Fold {
        #[arg(long)]
        matrix: String,
    },
    /// Run the homotopy oracles.
    Verify {
        #[arg(value_parser = ["units", "master", "functors", "hilbert", "all"], default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Strata,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

struct Ctx<'a> {
    cli: &'a Cli,
    group: Arc<FiniteGroup>,
}

impl Ctx<'_> {
    fn level(&self) -> Level {
        match self.cli.level {
            LevelArg::Strata => Level::Strata,
            LevelArg::Rational => Level::Rational,
        }
    }

    fn reduction(&self) -> Result<Reduction> {
        self.cli.reduction.parse()
    }

    fn category(&self) -> Result<SectionCategory> {
        SectionCategory::new(self.group.clone(), self.cli.prime)
    }

    fn glue(&self) -> Result<GluedSkeleton> {
        glue_category(&self.category()?, self.level(), self.cli.cap_rank, self.reduction()?)
    }

    fn subgroup(&self) -> Result<Subgroup> {
        resolve_subgroup(&self.group, &self.cli.subgroup)
    }

    /// Coordinates on `G`, which must be elementary abelian of exponent `p`.
    fn elementary(&self) -> Result<SectionModel> {
        let g = &self.group;
        if !g.is_elementary_abelian(self.cli.prime) {
            return Err(Error::domain(format!("this command needs an elementary abelian {}-group", self.cli.prime)));
        }
        SectionModel::new(g.clone(), self.cli.prime, &g.full_subgroup(), &g.trivial_subgroup())
    }
}

fn resolve_subgroup(g: &FiniteGroup, text: &str) -> Result<Subgroup> {
    match text.trim() {
        "trivial" | "1" => return Ok(g.trivial_subgroup()),
        "full" => return Ok(g.full_subgroup()),
        _ => {}
    }
    let all = subgroups(g)?;
    let listing = || all.iter().map(|s| s.label(g)).collect::<Vec<_>>().join(" ");
    if let Some(s) = all.iter().find(|s| s.label(g) == text.trim()) {
        return Ok(s.clone());
    }
    let inner = text.trim().trim_start_matches('<').trim_end_matches('>');
    let mut gens = Vec::new();
    let mut pos = 0;
    for name in inner.split(',') {
        let found = g.find(name.trim());
        match found {
            Some(x) => gens.push(x),
            None => {
                return Err(Error::parse(pos, format!("no element `{}`; subgroups are: {}", name.trim(), listing())));
            }
        }
        pos += name.len() + 1;
    }
    Ok(g.generate(&gens))
}

fn parse_matrix(text: &str, p: u32) -> Result<Mat> {
    let mut rows = Vec::new();
    let mut pos = 0;
    for row in text.split(';') {
        let mut r = Vec::new();
        for entry in row.split(',') {
            let v: u32 = entry
                .trim()
                .parse()
                .map_err(|_| Error::parse(pos, format!("expected a matrix entry, found `{}`", entry.trim())))?;
            r.push(v % p);
            pos += entry.len() + 1;
        }
        rows.push(r);
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::parse(0, "matrix rows have different lengths"));
    }
    Ok(Mat::from_rows(&rows, rows[0].len()))
}

fn morphism_json(cat: &SectionCategory, m: &SectionMorphism) -> Value {
    json!({ "source": cat.label(m.source), "target": cat.label(m.target), "g": cat.group().name(m.g) })
}

fn relation_json(cat: &SectionCategory, r: &SpanRelation) -> Value {
    json!({
        "middle": cat.label(r.middle),
        "left": morphism_json(cat, &r.left),
        "right": morphism_json(cat, &r.right),
        "nondegenerate": r.nondegenerate,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn no_dot(what: &str) -> Error {
    Error::Unsupported(format!("no DOT rendering for {what}"))
}

fn sections(ctx: &Ctx, homs: bool) -> Result<String> {
    let cat = ctx.category()?;
    let red = ctx.reduction()?;
    let n = cat.objects().len();
    let mut hom_sets = Vec::new();
    if homs {
        for x in 0..n {
            for y in 0..n {
                let hs = cat.homs(x, y, red)?;
                if !hs.is_empty() {
                    hom_sets.push((x, y, hs));
                }
            }
        }
    }
    let g = cat.group();
    match ctx.cli.format {
        Format::Dot => Ok(cat.poset_dot()),
        Format::Json => {
            let objects: Vec<Value> = cat
                .objects()
                .iter()
                .enumerate()
                .map(|(i, o)| json!({ "id": i, "H": o.h.label(g), "K": o.k.label(g), "rank": o.rank }))
                .collect();
            let hom_list: Vec<Value> = hom_sets
                .iter()
                .map(|(x, y, hs)| {
                    json!({ "source": x, "target": y, "classes": hs.iter().map(|m| g.name(m.g)).collect::<Vec<_>>() })
                })
                .collect();
            let mut v = json!({ "objects": objects });
            if homs {
                v["homs"] = Value::Array(hom_list);
            }
            Ok(pretty(&v))
        }
        Format::Text => {
            let mut out = String::new();
            for (i, o) in cat.objects().iter().enumerate() {
                let _ = writeln!(out, "{i}\t{}\trank {}", cat.label(i), o.rank);
            }
            for (x, y, hs) in &hom_sets {
                let names: Vec<String> = hs.iter().map(|m| g.name(m.g)).collect();
                let _ = writeln!(out, "{} -> {}: {}", cat.label(*x), cat.label(*y), names.join(" "));
            }
            Ok(out)
        }
    }
}

fn maxel(ctx: &Ctx) -> Result<String> {
    let cat = ctx.category()?;
    let maxel = cat.maxel();
    match ctx.cli.format {
        Format::Dot => Ok(cat.poset_dot()),
        Format::Json => {
            let g = cat.group();
            let v: Vec<Value> = maxel
                .iter()
                .map(|&x| {
                    let o = cat.object(x);
                    json!({ "H": o.h.label(g), "K": o.k.label(g), "rank": o.rank })
                })
                .collect();
            Ok(pretty(&Value::Array(v)))
        }
        Format::Text => Ok(maxel.iter().map(|&x| format!("{}\trank {}\n", cat.label(x), cat.object(x).rank)).collect()),
    }
}

fn relations(ctx: &Ctx) -> Result<String> {
    let cat = ctx.category()?;
    let rels = cat.maximal_relations(ctx.reduction()?)?;
    match ctx.cli.format {
        Format::Dot => Ok(cat.relations_dot(&rels)),
        Format::Json => Ok(pretty(&Value::Array(rels.iter().map(|r| relation_json(&cat, r)).collect()))),
        Format::Text => {
            let g = cat.group();
            let mut out = String::new();
            for r in &rels {
                let tag = if r.nondegenerate { "" } else { "\t(degenerate)" };
                let _ = writeln!(
                    out,
                    "{} <-[{}]- {} -[{}]-> {}{tag}",
                    cat.label(r.left.target),
                    g.name(r.left.g),
                    cat.label(r.middle),
                    g.name(r.right.g),
                    cat.label(r.right.target)
                );
            }
            Ok(out)
        }
    }
}

fn ring(ctx: &Ctx) -> Result<String> {
    let model = ctx.elementary()?;
    let h = model.subspace_of(&ctx.subgroup()?)?;
    let e = Elab::new(ctx.cli.prime, model.rank())?;
    let local = present_rloc(&e, &h)?;
    let r = &local.ring;
    let relations: Vec<String> = r.relations().iter().map(|f| r.display(f)).collect();
    match ctx.cli.format {
        Format::Dot => Err(no_dot("ring presentations")),
        Format::Json => {
            let gens: Vec<Value> = r.variables().iter().map(|v| json!({ "name": v.name, "degree": v.degree })).collect();
            Ok(pretty(&json!({ "generators": gens, "relations": relations })))
        }
        Format::Text => {
            let gens: Vec<String> = r.variables().iter().map(|v| format!("{} ({})", v.name, v.degree)).collect();
            let mut out = format!("generators: {}\n", gens.join(", "));
            let _ = writeln!(out, "relations: {}", if relations.is_empty() { "none".into() } else { relations.join(", ") });
            Ok(out)
        }
    }
}

fn render(ctx: &Ctx, gl: &GluedSkeleton) -> String {
    match ctx.cli.format {
        Format::Text => gl.to_text(),
        Format::Json => {
            let mut s = gl.to_json();
            s.push('\n');
            s
        }
        Format::Dot => gl.to_dot(),
    }
}

fn skeleton(ctx: &Ctx) -> Result<String> {
    ctx.elementary()?;
    Ok(render(ctx, &ctx.glue()?))
}

fn components_cmd(ctx: &Ctx) -> Result<String> {
    let gl = ctx.glue()?;
    let comps = components(&gl);
    match ctx.cli.format {
        Format::Dot => Ok(gl.to_dot()),
        Format::Json => {
            let v: Vec<Value> =
                comps.iter().map(|(s, g)| json!({ "section": s, "generic": gl.points[*g].label })).collect();
            Ok(pretty(&Value::Array(v)))
        }
        Format::Text => Ok(comps.iter().map(|(s, g)| format!("{s}\t{}\n", gl.points[*g].label)).collect()),
    }
}

fn dim(ctx: &Ctx) -> Result<String> {
    let cat = ctx.category()?;
    let gl = glue_category(&cat, ctx.level(), ctx.cli.cap_rank, ctx.reduction()?)?;
    let d = dimension(&cat, &gl);
    match ctx.cli.format {
        Format::Dot => Err(no_dot("dimensions")),
        Format::Json => Ok(pretty(&serde_json::to_value(d).expect("json"))),
        Format::Text => Ok(format!(
            "{}\nlongest chain {}\np-rank {}\ncohomological open {}\n",
            d.sectional_rank, d.longest_chain, d.p_rank, d.open_dimension
        )),
    }
}

fn fold_cmd(ctx: &Ctx, matrix: &str) -> Result<String> {
    let model = ctx.elementary()?;
    let a = parse_matrix(matrix, ctx.cli.prime)?;
    let sk = Skeleton::new(ctx.cli.prime, model.rank(), ctx.level(), ctx.cli.cap_rank)?;
    Ok(render(ctx, &fold(&sk, &a)?))
}

fn verify_cmd(ctx: &Ctx, suite: &str) -> Result<String> {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let mut reports = Vec::new();
    for s in suites {
        reports.push(verify::run(s, ctx.cli.seed)?);
    }
    let out = match ctx.cli.format {
        Format::Dot => return Err(no_dot("verification reports")),
        Format::Json => pretty(&serde_json::to_value(&reports).expect("json")),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let ok = r.checks.iter().filter(|c| c.passed).count();
                let _ = writeln!(out, "{}: {ok}/{} passed", r.suite, r.checks.len());
                for c in r.failures() {
                    let _ = writeln!(out, "  FAIL {}", c.name);
                }
            }
            out
        }
    };
    if reports.iter().all(|r| r.passed()) {
        Ok(out)
    } else {
        print!("{out}");
        Err(Error::Verification("some checks failed".into()))
    }
}

fn run(cli: &Cli) -> Result<String> {
    if cli.cap_rank == 0 || cli.cap_order == 0 {
        return Err(Error::domain("caps must be positive"));
    }
    let group = Arc::new(GroupSpec::parse(&cli.group)?.build(cli.cap_order)?);
    let ctx = Ctx { cli, group };
    match &cli.command {
        Command::Sections { homs } => sections(&ctx, *homs),
        Command::Maxel => maxel(&ctx),
        Command::Relations => relations(&ctx),
        Command::Ring => ring(&ctx),
        Command::Skeleton => skeleton(&ctx),
        Command::Glue => Ok(render(&ctx, &ctx.glue()?)),
        Command::Components => components_cmd(&ctx),
        Command::Dim => dim(&ctx),
        Command::Fold { matrix } => fold_cmd(&ctx, matrix),
        Command::Verify { suite } => verify_cmd(&ctx, suite),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Domain(_) | Error::Unsupported(_) => 2,
        Error::Resource(_) => 3,
        Error::Verification(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
