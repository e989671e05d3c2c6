//! `tambara`: command-line access to groups, G-sets, Tambara functors, their
//! ideals and spectra.

use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tambara::burnside::OmegaFunctor;
use tambara::fixed_point::{counting_morphism, FixedPointFunctor, GRing, IntegerFixedPoint};
use tambara::formats;
use tambara::group::{builtin, builtin_spec, bits, Group, GroupSpec, DEFAULT_ORDER_CAP};
use tambara::gset::{dependent_product, DEFAULT_POINT_CAP, enumerate_gmaps, orbit_decompose};
use tambara::ideals::{
    combine, coprime_and_crt, first_iso_check, generate, invariant_ideal_lift, membership,
    quotient_functor, radical, Combine, GenerateParams, IdealFamily, Verdict,
};
use tambara::level_ideal::LevelIdeal;
use tambara::ring::{Elem, LevelRing};
use tambara::sample::DEFAULT_SEED;
use tambara::spectrum::{
    classify, classify_omega, sample_domain_witnesses, spec, spec_inclusion_demo, spec_map, DEFAULT_CANDIDATE_CAP,
};
use tambara::tambara::{parse_map, Functor, Tambara};
use tambara::verify::{verify_axioms, VerifyBounds};
use tambara::Error;

#[derive(Parser)]
#[command(name = "tambara", version, about = "Exact computation with Tambara functors on finite groups")]
struct Cli {
    /// Largest G-set built while computing norms and exponential diagrams.
    #[arg(long, global = true)]
    cap_points: Option<usize>,
    /// Coordinate bound for lattice levels in ideal checks.
    #[arg(long = "box", global = true, default_value_t = tambara::ideals::DEFAULT_BOX)]
    box_bound: i64,
    /// Round cap for ideal saturation.
    #[arg(long, global = true, default_value_t = tambara::ideals::DEFAULT_ROUNDS)]
    rounds: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    }
    .map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Groups and their subgroups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// G-sets and G-maps read from a file.
    #[command(subcommand)]
    Gset(GsetCmd),
    /// Structure maps of a Tambara functor.
    #[command(subcommand)]
    Tam(TamCmd),
    /// Ideals of a Tambara functor.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Prime spectra and classification.
    #[command(subcommand)]
    Spec(SpecCmd),
    /// Worked examples.
    Demo {
        #[arg(value_enum)]
        name: Demo,
        #[arg(long, default_value = "c2")]
        group: String,
        /// Number of random pairs for `omega-domain`.
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    PaperNorm,
    Mrc,
    Crt,
    OmegaDomain,
    SpecInclusion,
}

#[derive(Args, Clone)]
struct GroupArg {
    /// Built-in name (c1, c2, c3, c4, s3, c2xc2) or a group description file.
    #[arg(long, default_value = "c2")]
    group: String,
}

#[derive(Args, Clone)]
struct FunctorArg {
    /// omega, pz, zmod:<n>[:trivial], prodfield:<q>:<n>:perm|trivial, or gring:<file>.
    #[arg(long)]
    functor: String,
    #[command(flatten)]
    group: GroupArg,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Order and subgroup classes.
    Info(GroupArg),
    /// Every subgroup with its class.
    Subgroups(GroupArg),
    /// Print the group in the text format.
    Print(GroupArg),
}

#[derive(Subcommand)]
enum GsetCmd {
    /// Orbit decomposition of a G-set.
    Orbits {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        file: String,
        #[arg(long)]
        set: String,
    },
    /// All G-maps between two G-sets.
    Maps {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        file: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 1000)]
        max: usize,
    },
    /// The dependent product Π_f(A) for `f: X → Y` and `p: A → X`.
    Pi {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        file: String,
        /// Map `X->Y`.
        #[arg(long)]
        f: String,
        /// Map `A->X`.
        #[arg(long)]
        p: String,
    },
}

#[derive(Args)]
struct MapElem {
    #[command(flatten)]
    functor: FunctorArg,
    /// Elementary map `p<H><K>[@c]` from `G/K` to `G/H`.
    #[arg(long)]
    map: String,
    #[arg(long)]
    elem: String,
}

#[derive(Subcommand)]
enum TamCmd {
    /// Describe the levels, or the value on a G-set.
    Eval {
        #[command(flatten)]
        functor: FunctorArg,
        #[arg(long)]
        file: Option<String>,
        #[arg(long)]
        set: Option<String>,
    },
    Res(MapElem),
    Tr(MapElem),
    Nm(MapElem),
    Shriek(MapElem),
    /// Verify the Tambara functor axioms.
    Axioms(FunctorArg),
}

#[derive(Args)]
struct IdealFile {
    /// Ideal description file; its header names the functor and group.
    #[arg(long)]
    file: String,
}

#[derive(Subcommand)]
enum IdealCmd {
    /// The ideal generated by elements `"<H>: <elem>"`.
    Gen {
        #[command(flatten)]
        functor: FunctorArg,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Print the saturation trace.
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether a family of level ideals is an ideal.
    Check(IdealFile),
    /// Intersection, sum or product of two ideals.
    Op {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum)]
        op: Op,
    },
    Radical(IdealFile),
    /// The largest ideal over an invariant ideal of the bottom level.
    Lift {
        #[command(flatten)]
        functor: FunctorArg,
        /// Generators of the bottom-level ideal.
        #[arg(long = "gen")]
        gens: Vec<String>,
    },
    /// The quotient functor, with its axioms verified.
    Quotient {
        #[command(flatten)]
        file: IdealFile,
        #[arg(long)]
        allow_sampled: bool,
    },
    /// Membership in the ideal generated by `--gen`, with a derivation.
    Member {
        #[command(flatten)]
        functor: FunctorArg,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long)]
        elem: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Intersect,
    Sum,
    Product,
}

#[derive(Subcommand)]
enum SpecCmd {
    /// Primes, closed sets and flags of a functor with finite levels.
    Compute {
        #[command(flatten)]
        functor: FunctorArg,
        /// Ideal files to include among the named closed sets.
        #[arg(long = "ideal")]
        ideals: Vec<String>,
    },
    Classify(FunctorArg),
    /// The map on spectra induced by the projection onto a quotient.
    Map(IdealFile),
}

enum Failure {
    Verification(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, Failure>;

struct Session {
    cap_points: usize,
    diagram_points: usize,
    params: GenerateParams,
    seed: u64,
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Lib(Error::Invalid(msg.into()))
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("cannot read {path}: {e}")))
}

fn verdict(ok: bool, out: String) -> Outcome {
    if ok {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

impl Session {
    fn group(&self, name: &str) -> Result<Arc<Group>, Failure> {
        if let Some(g) = builtin(name) {
            return Ok(Arc::new(g));
        }
        if std::path::Path::new(name).exists() {
            return Ok(Arc::new(formats::load_group(&read(name)?, DEFAULT_ORDER_CAP)?));
        }
        Err(input(format!("unknown group `{name}`")))
    }

    fn functor(&self, desc: &str, group: &Arc<Group>) -> Result<Functor, Failure> {
        let parts: Vec<&str> = desc.split(':').collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| input(format!("bad number `{s}` in `{desc}`")));
        let pr = |r: GRing| -> Functor { Arc::new(FixedPointFunctor::new(Arc::new(r))) };
        Ok(match parts.as_slice() {
            ["omega"] => Arc::new(OmegaFunctor::with_point_cap(group.clone(), self.cap_points)?),
            ["pz"] => Arc::new(IntegerFixedPoint::new(group.clone())),
            ["zmod", n] | ["zmod", n, "trivial"] => pr(GRing::zmod(group.clone(), num(n)?)?),
            ["prodfield", q, n, mode @ ("perm" | "trivial")] => {
                pr(GRing::prodfield(group.clone(), num(q)?, num(n)?, *mode == "perm")?)
            }
            ["gring", path] => pr(formats::parse_gring(&read(path)?, group)?),
            _ => return Err(input(format!("unknown functor `{desc}`"))),
        })
    }

    fn functor_arg(&self, a: &FunctorArg) -> Result<Functor, Failure> {
        let g = self.group(&a.group.group)?;
        self.functor(&a.functor, &g)
    }

    fn ideal_file(&self, path: &str) -> Result<(String, IdealFamily, tambara::ideals::IdealCheck), Failure> {
        let text = read(path)?;
        let (desc, gname) = formats::ideal_header(&text)?;
        let g = self.group(&gname)?;
        let t = self.functor(&desc, &g)?;
        let levels = formats::parse_ideal(&text, &*t)?;
        let (fam, check) = IdealFamily::certified(t, levels, self.params.box_bound)?;
        Ok((desc, fam, check))
    }

    fn gens(&self, t: &Functor, gens: &[String]) -> Result<Vec<(usize, Elem)>, Failure> {
        gens.iter()
            .map(|s| formats::parse_element(&**t, None, s).map_err(Failure::from))
            .collect()
    }
}

fn describe(ring: &LevelRing) -> String {
    match ring {
        LevelRing::Finite(r) => format!("finite ring with {} elements", r.size()),
        LevelRing::Lattice(l) if l.modulus().is_zero() => format!("free of rank {} on {}", l.dim(), l.names().join(", ")),
        LevelRing::Lattice(l) => match ring.size() {
            Some(n) => format!("quotient with {n} elements of the lattice on {}", l.names().join(", ")),
            None => format!("quotient of rank {} of the lattice on {}", l.dim() - l.modulus().rank(), l.names().join(", ")),
        },
        LevelRing::Product(a, b) => format!("product of ({}) and ({})", describe(a), describe(b)),
    }
}

fn cmd_group(s: &Session, c: GroupCmd) -> Outcome {
    match c {
        GroupCmd::Info(a) => {
            let g = s.group(&a.group)?;
            let mut out = format!("group {} of order {}\n", g.name, g.order());
            out.push_str(&format!("{} subgroup classes\n", g.num_classes()));
            for c in 0..g.num_classes() {
                let sub = g.subgroup(g.rep_index(c));
                out.push_str(&format!("  {}: order {}, index {}\n", g.class_name(c), sub.order(), g.order() / sub.order()));
            }
            Ok(out)
        }
        GroupCmd::Subgroups(a) => {
            let g = s.group(&a.group)?;
            let mut out = String::new();
            for i in 0..g.catalog.all_subgroups.len() {
                let sub = g.subgroup(i);
                let els: Vec<String> = bits(sub.mask).map(|x| x.to_string()).collect();
                out.push_str(&format!(
                    "{}: class {}, order {}, elements {{{}}}\n",
                    g.subgroup_name(i),
                    g.class_name(g.class_of(i)),
                    sub.order(),
                    els.join(", ")
                ));
            }
            Ok(out)
        }
        GroupCmd::Print(a) => {
            let spec = match builtin_spec(&a.group) {
                Some(spec) => spec,
                None => formats::parse_group(&read(&a.group)?)?.1,
            };
            let g = s.group(&a.group)?;
            let spec = if matches!(spec, GroupSpec::Perm { .. }) { spec } else { GroupSpec::Table(g.table.table()) };
            Ok(formats::print_group(&g.name, &spec))
        }
    }
}

fn cmd_gset(s: &Session, c: GsetCmd) -> Outcome {
    match c {
        GsetCmd::Orbits { group, file, set } => {
            let g = s.group(&group.group)?;
            let b = formats::parse_bundle(&read(&file)?, &g)?;
            let x = b.gset(&set)?;
            let d = orbit_decompose(x);
            let mut out = format!("{} points, {} orbits\n", x.size(), d.orbits.len());
            for (i, o) in d.orbits.iter().enumerate() {
                let pts: Vec<String> = o.points.iter().map(|p| p.to_string()).collect();
                out.push_str(&format!("orbit {i}: G/{} {{{}}}\n", g.class_name(o.class), pts.join(", ")));
            }
            Ok(out)
        }
        GsetCmd::Maps { group, file, from, to, max } => {
            let g = s.group(&group.group)?;
            let b = formats::parse_bundle(&read(&file)?, &g)?;
            let maps = enumerate_gmaps(b.gset(&from)?, b.gset(&to)?, max)?;
            let mut out = format!("{} maps {from} -> {to}\n", maps.len());
            for m in &maps {
                out.push_str(&formats::print_gmap(&from, &to, m));
            }
            Ok(out)
        }
        GsetCmd::Pi { group, file, f, p } => {
            let g = s.group(&group.group)?;
            let b = formats::parse_bundle(&read(&file)?, &g)?;
            let dp = dependent_product(b.gmap(&f)?, b.gmap(&p)?, s.cap_points)?;
            let d = orbit_decompose(&dp.pi);
            let mut out = formats::print_gset("Pi", &dp.pi);
            let target = f.split("->").nth(1).and_then(|t| t.split('#').next()).unwrap_or("Y").trim();
            out.push_str(&formats::print_gmap("Pi", target, &dp.proj));
            let sig: Vec<String> = d
                .signature
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &k)| k > 0)
                .map(|(c, k)| format!("{k}*[G/{}]", g.class_name(c)))
                .collect();
            out.push_str(&format!("orbits: {}\n", sig.join(" + ")));
            Ok(out)
        }
    }
}

fn cmd_tam(s: &Session, c: TamCmd) -> Outcome {
    let structure = |m: MapElem, tag: &str| -> Outcome {
        let t = s.functor_arg(&m.functor)?;
        let g = t.group().clone();
        let map = parse_map(&g, &m.map)?;
        let (from, to) = if tag == "res" { (map.dst, map.src) } else { (map.src, map.dst) };
        let (_, x) = formats::parse_element(&*t, Some(from), &m.elem)?;
        let y = match tag {
            "res" => t.res(&map, &x),
            "tr" => t.tr(&map, &x),
            "nm" => t.nm(&map, &x)?,
            _ => t.shriek(&map, &x)?,
        };
        Ok(format!("{}\n", t.level(to).format(&y)))
    };
    match c {
        TamCmd::Eval { functor, file, set } => {
            let t = s.functor_arg(&functor)?;
            let g = t.group().clone();
            match (file, set) {
                (Some(file), Some(set)) => {
                    let b = formats::parse_bundle(&read(&file)?, &g)?;
                    let d = orbit_decompose(b.gset(&set)?);
                    let mut out = format!("{}({set}) is a product over {} orbits\n", t.name(), d.orbits.len());
                    for (i, o) in d.orbits.iter().enumerate() {
                        out.push_str(&format!("orbit {i} ≅ G/{}: {}\n", g.class_name(o.class), describe(t.level(o.class))));
                    }
                    Ok(out)
                }
                (None, None) => {
                    let mut out = format!("{} over {}\n", t.name(), g.name);
                    for c in 0..t.num_levels() {
                        out.push_str(&format!("G/{}: {}\n", g.class_name(c), describe(t.level(c))));
                    }
                    Ok(out)
                }
                _ => Err(input("--file and --set go together")),
            }
        }
        TamCmd::Res(m) => structure(m, "res"),
        TamCmd::Tr(m) => structure(m, "tr"),
        TamCmd::Nm(m) => structure(m, "nm"),
        TamCmd::Shriek(m) => structure(m, "shriek"),
        TamCmd::Axioms(f) => {
            let t = s.functor_arg(&f)?;
            let report = verify_axioms(
                &t,
                &VerifyBounds {
                    max_points: s.diagram_points,
                    seed: s.seed,
                },
            );
            verdict(report.passed(), report.render())
        }
    }
}

fn cmd_ideal(s: &Session, c: IdealCmd) -> Outcome {
    match c {
        IdealCmd::Gen { functor, gens, trace } => {
            let t = s.functor_arg(&functor)?;
            let gens = s.gens(&t, &gens)?;
            let fam = generate(&t, &gens, s.params)?;
            let mut out = formats::print_ideal(&functor.functor, &*t, &fam.levels);
            out.push_str(&fam.render_certificate());
            if let Some(tr) = &fam.trace {
                let replay = tr.rebuild(&*t).map(|l| l == fam.levels).unwrap_or(false);
                out.push_str(&format!("trace: {} entries, replay reproduces the ideal: {replay}\n", tr.entries.len()));
                if trace {
                    for (i, e) in tr.entries.iter().enumerate().filter(|(_, e)| e.adjoined) {
                        out.push_str(&format!(
                            "  [{i}] G/{}: {} = {}\n",
                            t.group().class_name(e.level),
                            t.level(e.level).format(&e.value),
                            tr.render(&*t, i)
                        ));
                    }
                }
                return verdict(replay, out);
            }
            Ok(out)
        }
        IdealCmd::Check(f) => {
            let (_, _, check) = s.ideal_file(&f.file)?;
            verdict(check.is_ideal(), check.render())
        }
        IdealCmd::Op { a, b, op } => {
            let (desc, fa, _) = s.ideal_file(&a)?;
            let (_, fb, _) = s.ideal_file(&b)?;
            // both files must describe the same functor object
            let levels_b = fb.levels.clone();
            let fb = IdealFamily { functor: fa.functor.clone(), levels: levels_b, ..fb };
            let tag = match op {
                Op::Intersect => Combine::Intersect,
                Op::Sum => Combine::Sum,
                Op::Product => Combine::Product,
            };
            let r = combine(tag, &fa, &fb, s.params)?;
            let mut out = formats::print_ideal(&desc, &*r.functor, &r.levels);
            out.push_str(&r.render_certificate());
            Ok(out)
        }
        IdealCmd::Radical(f) => {
            let (desc, fam, check) = s.ideal_file(&f.file)?;
            if !check.is_ideal() {
                return Err(Failure::Verification(check.render()));
            }
            let r = radical(&fam, s.params)?;
            Ok(formats::print_ideal(&desc, &*r.functor, &r.levels))
        }
        IdealCmd::Lift { functor, gens } => {
            let t = s.functor_arg(&functor)?;
            let e = t.group().trivial_class();
            let re = t.level(e);
            let gens = gens.iter().map(|x| re.parse(x)).collect::<Result<Vec<_>, _>>()?;
            let fam = invariant_ideal_lift(&t, &LevelIdeal::generate(re, &gens))?;
            Ok(formats::print_ideal(&functor.functor, &*t, &fam.levels))
        }
        IdealCmd::Quotient { file, allow_sampled } => {
            let (_, fam, _) = s.ideal_file(&file.file)?;
            let (q, _) = quotient_functor(&fam, allow_sampled)?;
            let g = q.group().clone();
            let mut out = String::new();
            for c in 0..q.num_levels() {
                out.push_str(&format!("G/{}: {}\n", g.class_name(c), describe(q.level(c))));
            }
            let qf: Functor = q;
            let report = verify_axioms(
                &qf,
                &VerifyBounds {
                    max_points: s.diagram_points,
                    seed: s.seed,
                },
            );
            out.push_str(&report.render());
            verdict(report.passed(), out)
        }
        IdealCmd::Member { functor, gens, elem } => {
            let t = s.functor_arg(&functor)?;
            let gens = s.gens(&t, &gens)?;
            let (c, x) = formats::parse_element(&*t, None, &elem)?;
            let fam = generate(&t, &gens, s.params)?;
            let m = membership(&fam, c, &x)?;
            let mut out = format!("{}\n", m.verdict);
            if let Some(w) = &m.witness {
                out.push_str(&format!("derivation: {w}\n"));
            }
            if m.verdict == Verdict::Unknown {
                out.push_str("saturation did not certify the ideal; membership is undecided\n");
            }
            Ok(out)
        }
    }
}

fn cmd_spec(s: &Session, c: SpecCmd) -> Outcome {
    match c {
        SpecCmd::Compute { functor, ideals } => {
            let t = s.functor_arg(&functor)?;
            let mut named = Vec::new();
            for path in &ideals {
                let text = read(path)?;
                let levels = formats::parse_ideal(&text, &*t)?;
                let (fam, check) = IdealFamily::certified(t.clone(), levels, s.params.box_bound)?;
                if !check.is_ideal() {
                    return Err(Failure::Verification(format!("{path} is not an ideal\n{}", check.render())));
                }
                named.push((path.clone(), fam));
            }
            let r = spec(&t, &named, DEFAULT_CANDIDATE_CAP)?;
            verdict(r.laws_hold(), r.render())
        }
        SpecCmd::Classify(f) => {
            let t = s.functor_arg(&f)?;
            if f.functor == "omega" {
                let omega = Arc::new(OmegaFunctor::with_point_cap(t.group().clone(), s.cap_points)?);
                let (c, n) = classify_omega(&omega, 20, s.seed)?;
                let mut out = c.render();
                out.push_str(&format!("rho certificates: {n}/20\n"));
                return Ok(out);
            }
            Ok(classify(&t, DEFAULT_CANDIDATE_CAP)?.render())
        }
        SpecCmd::Map(f) => {
            let (_, fam, check) = s.ideal_file(&f.file)?;
            if !check.is_ideal() {
                return Err(Failure::Verification(check.render()));
            }
            let (_, p) = quotient_functor(&fam, false)?;
            let m = spec_map(&p, DEFAULT_CANDIDATE_CAP)?;
            let ok = m.continuous && m.sharp_bijective == Some(true);
            verdict(ok, m.render())
        }
    }
}

fn demo_paper_norm(s: &Session) -> Outcome {
    let g = s.group("c2")?;
    let omega = OmegaFunctor::with_point_cap(g.clone(), s.cap_points)?;
    let m = parse_map(&g, "pGe")?;
    let top = omega.level(g.top_class());
    let by_enumeration = Elem(omega.norm_by_enumeration(&m, &[2])?);
    let by_polynomial = omega.nm(&m, &Elem(vec![2]))?;
    let expected = top.parse("2*[G/G] + 1*[G/e]")?;
    let out = format!(
        "nm along pGe of 2*[G/e] over c2\nenumerated: {}\npolynomial: {}\nexpected:   {}\n",
        top.format(&by_enumeration),
        top.format(&by_polynomial),
        top.format(&expected)
    );
    verdict(by_enumeration == expected && by_polynomial == expected, out)
}

fn demo_mrc(s: &Session, group: &str) -> Outcome {
    let g = s.group(group)?;
    let omega = Arc::new(OmegaFunctor::with_point_cap(g.clone(), s.cap_points)?);
    let pz: Functor = Arc::new(IntegerFixedPoint::new(g.clone()));
    let phi = counting_morphism(omega.clone(), pz)?;
    let report = first_iso_check(&phi, s.seed)?;
    let o: Functor = omega.clone();
    let (mrc, _) = tambara::spectrum::mrcize(&o)?;
    let kernel_is_i0 = report.kernel.levels == mrc.ideals;
    let mut out = format!("Omega_MRC over {} against P(Z)\n", g.name);
    for c in 0..o.num_levels() {
        let q = report.quotient.level(c);
        let gens: Vec<String> = q
            .additive_generators()
            .iter()
            .map(|y| format!("{} -> {}", q.format(y), report.iso.apply(c, y)))
            .collect();
        out.push_str(&format!(
            "G/{}: kernel {}; {}; injective {:?}, surjective {}\n",
            g.class_name(c),
            report.kernel.levels[c].format(o.level(c)),
            gens.join(", "),
            report.injective[c],
            report.surjective[c]
        ));
    }
    out.push_str(&format!("kernel equals I_(0): {kernel_is_i0}\n"));
    out.push_str(&format!("validated morphism: {}\n", report.validated));
    for f in &report.failures {
        out.push_str(&format!("  {f}\n"));
    }
    let mut squares = true;
    if g.order() == 2 {
        let m = parse_map(&g, "pGe")?;
        let q = &report.quotient;
        for k in -5i64..=5 {
            let y = q.level(0).from_int(k);
            let n = report.iso.apply(1, &q.nm(&m, &y)?);
            squares &= n == Elem(vec![k * k]);
        }
        out.push_str(&format!("induced nm is m -> m^2 on [-5, 5]: {squares}\n"));
    }
    let ok = report.is_isomorphism() && kernel_is_i0 && squares;
    out.push_str(&format!("isomorphism: {ok}\n"));
    verdict(ok, out)
}

fn demo_crt(s: &Session) -> Outcome {
    let g = s.group("c2")?;
    let t = s.functor("zmod:6", &g)?;
    let re = t.level(0);
    let i2 = invariant_ideal_lift(&t, &LevelIdeal::generate(re, &[re.from_int(2)]))?;
    let i3 = invariant_ideal_lift(&t, &LevelIdeal::generate(re, &[re.from_int(3)]))?;
    let r = coprime_and_crt(&[i2, i3], s.params, s.seed)?;
    let mut out = String::from("P(Z/6) over c2 with I_(2) and I_(3)\n");
    out.push_str(&format!("coprime: {}\n", r.coprime));
    out.push_str(&format!("product is the levelwise product: {}\n", r.levelwise_product));
    out.push_str(&format!("product equals intersection: {}\n", r.product_is_intersection));
    out.push_str(&format!("quotient map is an isomorphism: {}\n", r.isomorphism));
    for (c, n) in r.checks.iter().enumerate() {
        out.push_str(&format!("  G/{}: {n} checks\n", g.class_name(c)));
    }
    verdict(r.holds(), out)
}

fn demo_omega_domain(s: &Session, group: &str, count: usize) -> Outcome {
    let g = s.group(group)?;
    let omega = OmegaFunctor::with_point_cap(g.clone(), s.cap_points)?;
    let ws = sample_domain_witnesses(&omega, count, s.seed)?;
    let ok = ws.iter().filter(|w| w.certified).count();
    let mut out = format!("{ok}/{count} random non-zero pairs over {} certified\n", g.name);
    if let Some(w) = ws.first() {
        out.push_str(&w.render(&omega));
    }
    verdict(ok == count, out)
}

fn demo_spec_inclusion(s: &Session, group: &str) -> Outcome {
    let g = s.group(group)?;
    let omega = Arc::new(OmegaFunctor::with_point_cap(g, s.cap_points)?);
    let d = spec_inclusion_demo(&omega, &[2, 3], s.seed)?;
    verdict(d.all_prime() && d.all_distinct(), d.render(&omega))
}

fn run(cli: Cli) -> Outcome {
    let Format::Text = cli.format;
    let s = Session {
        cap_points: cli.cap_points.unwrap_or(DEFAULT_POINT_CAP),
        diagram_points: cli.cap_points.unwrap_or(VerifyBounds::default().max_points),
        params: GenerateParams {
            box_bound: cli.box_bound,
            rounds: cli.rounds,
        },
        seed: cli.seed,
    };
    match cli.command {
        Command::Group(c) => cmd_group(&s, c),
        Command::Gset(c) => cmd_gset(&s, c),
        Command::Tam(c) => cmd_tam(&s, c),
        Command::Ideal(c) => cmd_ideal(&s, c),
        Command::Spec(c) => cmd_spec(&s, c),
        Command::Demo { name, group, count } => match name {
            Demo::PaperNorm => demo_paper_norm(&s),
            Demo::Mrc => demo_mrc(&s, &group),
            Demo::Crt => demo_crt(&s),
            Demo::OmegaDomain => demo_omega_domain(&s, &group, count),
            Demo::SpecInclusion => demo_spec_inclusion(&s, &group),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceCap { .. } | Error::Refused(_) => 3,
                _ => 2,
            })
        }
    }
}
