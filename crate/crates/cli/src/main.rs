use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use opclass::braids::{braid_eq, braid_nf, render_diagram, vine_compose, BraidWord, Vine};
use opclass::classifier::{classifier_category, Classifier, ClassifierMorphism, ClassifierObject};
use opclass::codescent::{
    bar_build, check_crossed_axioms, check_delta_law, pi0_codescent, quotient_identify_isos, CategoryJson,
    FiniteCategory,
};
use opclass::finmaps::bij_mon_factorize;
use opclass::operads::{builtin_operad, check_morphism, check_operad_axioms, morphism_from_spec, tabulate, Flavour};
use opclass::{par, verify, FinFunction};
use serde_json::json;

mod io;

use io::{emit, pretty, read_json};

const SAT_PASSES: usize = 64;

/// Operad classifiers, braids, vines and codescent objects.
///
/// JSON arguments may be given inline, as a file path, or as `-` for stdin.
/// All indices in JSON are 1-based. The worker count is read from
/// OPCLASS_THREADS.
#[derive(Parser)]
#[command(name = "opclass", version)]
struct Cli {
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a function as a monotone map after a permutation.
    Factorize {
        /// `{"images": [..], "target": n}`
        function: String,
    },
    #[command(subcommand)]
    Braid(BraidCmd),
    #[command(subcommand)]
    Vine(VineCmd),
    #[command(subcommand)]
    Operad(OperadCmd),
    #[command(subcommand)]
    Classifier(ClassifierCmd),
    #[command(subcommand)]
    Prop(PropCmd),
    #[command(subcommand)]
    Codescent(CodescentCmd),
    #[command(subcommand)]
    Quotient(QuotientCmd),
    /// Run a named verification suite.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Left normal form of a braid word.
    Nf {
        /// `{"strands": n, "word": [..]}`, letter `i` crossing strands `i, i+1`
        word: String,
        /// Also draw the normal form.
        #[arg(long)]
        diagram: bool,
    },
    /// Exit 0 if two words are the same braid, 1 otherwise.
    Eq { first: String, second: String },
}

#[derive(Subcommand)]
enum VineCmd {
    /// Normal form of a vine.
    Nf {
        /// `{"strands": m, "braid": [..], "fibres": [..]}`
        vine: String,
    },
    /// The composite that runs `first` and then `second`.
    Compose { first: String, second: String },
    /// Exit 0 if two presentations give the same vine, 1 otherwise.
    Eq { first: String, second: String },
}

#[derive(Subcommand)]
enum OperadCmd {
    /// Check the operad axioms up to an arity bound.
    Check {
        /// Builtin name (Com, Ass, AssNS, BCom) or tabulated JSON file.
        operad: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        /// Treat the argument as a morphism (`id:X` or `X->Y`).
        #[arg(long)]
        morphism: bool,
    },
    /// Tabulate an operad up to an arity bound as JSON.
    Tabulate {
        operad: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct ClassifierArgs {
    /// Operad morphism: `id:X` or `X->Y`.
    morphism: String,
    /// Target colour of the objects.
    #[arg(long)]
    colour: Option<String>,
}

#[derive(Subcommand)]
enum ClassifierCmd {
    /// List the objects up to a size.
    Objects {
        #[command(flatten)]
        cls: ClassifierArgs,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// List the morphisms between two objects.
    Hom {
        #[command(flatten)]
        cls: ClassifierArgs,
        /// Object by label, as printed by `objects`, or by 1-based index.
        source: String,
        target: String,
        /// Size limit used when resolving objects.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Braid word length explored for braided classifiers.
        #[arg(long, default_value_t = 2)]
        word_length: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compose two morphisms given as JSON, `first` then `second`.
    Compose {
        #[command(flatten)]
        cls: ClassifierArgs,
        first: String,
        second: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Summary,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum PropCmd {
    /// Truncation of the classifying category of an operad (or morphism).
    Generate {
        operad: String,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CodescentCmd {
    /// Build the bar construction, check it, and take its codescent object.
    Run {
        #[command(flatten)]
        cls: ClassifierArgs,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Also check the result against the classifier directly.
        #[arg(long)]
        compare_classifier: bool,
        #[arg(long, value_enum, default_value_t = Report::Summary)]
        format: Report,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QuotientCmd {
    /// Identify every isomorphism of a finite category with an identity.
    Isos {
        /// Category JSON; omit when using `--morphism`.
        category: Option<String>,
        /// Use the classifier of this morphism instead.
        #[arg(long, conflicts_with = "category")]
        morphism: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = SAT_PASSES)]
        passes: usize,
        #[arg(long, value_enum, default_value_t = Report::Summary)]
        format: Report,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.sequential {
        par::set_sequential(true);
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a check ran and failed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Factorize { function } => factorize(&function),
        Command::Braid(c) => braid(c),
        Command::Vine(c) => vine(c),
        Command::Operad(c) => operad(c),
        Command::Classifier(c) => classifier(c),
        Command::Prop(PropCmd::Generate { operad, max_size, format, out }) => prop(&operad, max_size, format, out),
        Command::Codescent(CodescentCmd::Run { cls, bound, compare_classifier, format, out }) => {
            codescent(&cls, bound, compare_classifier, format, out)
        }
        Command::Quotient(QuotientCmd::Isos { category, morphism, max_size, passes, format, out }) => {
            quotient(category, morphism, max_size, passes, format, out)
        }
        Command::Verify { suite } => {
            let report = verify::run_suite(&suite)?;
            println!("{report}");
            Ok(report.passed())
        }
    }
}

fn factorize(arg: &str) -> Result<bool> {
    let h: FinFunction = read_json(arg, "function")?;
    let (g, rho) = bij_mon_factorize(&h);
    let value = json!({
        "function": h,
        "monotone": g,
        "permutation": rho,
    });
    print!("{}", pretty(&value)?);
    Ok(true)
}

fn braid(c: BraidCmd) -> Result<bool> {
    match c {
        BraidCmd::Nf { word, diagram } => {
            let w: BraidWord = read_json(&word, "braid word")?;
            let nf = braid_nf(&w);
            println!("{nf}");
            print!("{}", pretty(&nf.to_word())?);
            if diagram {
                match render_diagram(&nf.to_word()) {
                    Some(d) => print!("{d}"),
                    None => println!("(normal form too long to draw)"),
                }
            }
            Ok(true)
        }
        BraidCmd::Eq { first, second } => {
            let a: BraidWord = read_json(&first, "braid word")?;
            let b: BraidWord = read_json(&second, "braid word")?;
            if a.strands() != b.strands() {
                bail!("words on {} and {} strands", a.strands(), b.strands());
            }
            let equal = braid_eq(&a, &b);
            println!("{equal}");
            Ok(equal)
        }
    }
}

fn vine(c: VineCmd) -> Result<bool> {
    match c {
        VineCmd::Nf { vine } => {
            let v: Vine = read_json(&vine, "vine")?;
            println!("{v}");
            print!("{}", pretty(&v)?);
            Ok(true)
        }
        VineCmd::Compose { first, second } => {
            let a: Vine = read_json(&first, "vine")?;
            let b: Vine = read_json(&second, "vine")?;
            let v = vine_compose(&a, &b)?;
            println!("{v}");
            print!("{}", pretty(&v)?);
            Ok(true)
        }
        VineCmd::Eq { first, second } => {
            let a: Vine = read_json(&first, "vine")?;
            let b: Vine = read_json(&second, "vine")?;
            let equal = a == b;
            println!("{equal}");
            Ok(equal)
        }
    }
}

fn operad(c: OperadCmd) -> Result<bool> {
    match c {
        OperadCmd::Check { operad, bound, morphism } => {
            let (name, report) = if morphism {
                let f = morphism_from_spec(&operad)?;
                (f.name().to_string(), check_morphism(&f, bound))
            } else {
                let op = builtin_operad(&operad)?;
                (op.name().to_string(), check_operad_axioms(op.as_ref(), bound))
            };
            match &report.violation {
                None => println!("{name}: {} equations hold up to arity {bound}", report.checked),
                Some(v) => println!("{name}: {v}"),
            }
            Ok(report.passed())
        }
        OperadCmd::Tabulate { operad, bound, out } => {
            let op = builtin_operad(&operad)?;
            emit(out.as_deref(), &pretty(&tabulate(op.as_ref(), bound)?)?)?;
            Ok(true)
        }
    }
}

fn load_classifier(args: &ClassifierArgs) -> Result<(Classifier, usize)> {
    let cls = Classifier::new(morphism_from_spec(&args.morphism)?)?;
    let colour = match &args.colour {
        Some(name) => cls.target().colour_index(name)?,
        None => 0,
    };
    Ok((cls, colour))
}

fn resolve_object(cls: &Classifier, objects: &[ClassifierObject], key: &str) -> Result<ClassifierObject> {
    if let Ok(i) = key.parse::<usize>() {
        return objects
            .get(i.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| anyhow!("object index {i} out of range 1..={}", objects.len()));
    }
    objects
        .iter()
        .find(|x| cls.object_label(x) == key)
        .cloned()
        .ok_or_else(|| anyhow!("no object labelled {key:?}; see `classifier objects`"))
}

fn classifier(c: ClassifierCmd) -> Result<bool> {
    match c {
        ClassifierCmd::Objects { cls, max_size } => {
            let (cls, colour) = load_classifier(&cls)?;
            for (i, x) in cls.objects(colour, max_size)?.iter().enumerate() {
                println!("{:>4}  {}", i + 1, cls.object_label(x));
            }
            Ok(true)
        }
        ClassifierCmd::Hom { cls, source, target, max_size, word_length, json } => {
            let (cls, colour) = load_classifier(&cls)?;
            let objects = cls.objects(colour, max_size)?;
            let a = resolve_object(&cls, &objects, &source)?;
            let b = resolve_object(&cls, &objects, &target)?;
            let length = (cls.flavour() == Flavour::Braided).then_some(word_length);
            let homs = cls.hom(&a, &b, length)?;
            if json {
                print!("{}", pretty(&homs)?);
            } else {
                println!("{} -> {}: {} morphisms", cls.object_label(&a), cls.object_label(&b), homs.len());
                for m in &homs {
                    println!("  {}", cls.morphism_label(m));
                }
            }
            Ok(true)
        }
        ClassifierCmd::Compose { cls, first, second } => {
            let (cls, _) = load_classifier(&cls)?;
            let m1: ClassifierMorphism = read_json(&first, "morphism")?;
            let m2: ClassifierMorphism = read_json(&second, "morphism")?;
            cls.check(&m1).context("first morphism")?;
            cls.check(&m2).context("second morphism")?;
            let m = cls.compose(&m1, &m2)?;
            println!("{}", cls.morphism_label(&m));
            print!("{}", pretty(&m)?);
            Ok(true)
        }
    }
}

fn prop_spec(operad: &str) -> String {
    if operad.starts_with("id:") || operad.contains("->") {
        operad.to_string()
    } else {
        format!("id:{operad}")
    }
}

fn prop(operad: &str, max_size: usize, format: Format, out: Option<PathBuf>) -> Result<bool> {
    let spec = prop_spec(operad);
    let cls = Classifier::new(morphism_from_spec(&spec)?)?;
    let cc = classifier_category(&cls, 0, max_size)?;
    let text = match format {
        Format::Json => pretty(&cc.category.to_json())?,
        Format::Dot => cc.category.to_dot(&spec),
    };
    emit(out.as_deref(), &text)?;
    Ok(true)
}

fn hom_table(c: &FiniteCategory) -> String {
    let mut s = String::new();
    for (a, row) in c.hom_counts().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|k| format!("{k:>4}")).collect();
        let _ = writeln!(s, "  {:>3} {:<24}{}", a + 1, c.objects()[a], cells.join(""));
    }
    s
}

fn report(c: &FiniteCategory, name: &str, format: Report, summary: String, out: Option<PathBuf>) -> Result<()> {
    let text = match format {
        Report::Summary => summary,
        Report::Json => pretty(&c.to_json())?,
        Report::Dot => c.to_dot(name),
    };
    emit(out.as_deref(), &text)
}

fn codescent(args: &ClassifierArgs, bound: usize, compare: bool, format: Report, out: Option<PathBuf>) -> Result<bool> {
    let (cls, colour) = load_classifier(args)?;
    let bar = bar_build(&cls, colour, bound)?;
    let x = &bar.double;
    let crossed = check_crossed_axioms(x);
    let delta = check_delta_law(x);
    let q = pi0_codescent(x)?;
    q.check_factorization()?;
    let mut ok = crossed.passed() && delta.passed();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "bar construction of {} up to size {bound}: {} objects, {} vertical arrows, {} horizontal arrows, {} squares",
        args.morphism,
        x.n_objects(),
        x.vertical().n_arrows(),
        x.horizontal().n_arrows(),
        x.squares().len()
    );
    for (title, r) in [("crossed axioms", &crossed), ("distributive law", &delta)] {
        let equations: usize = r.checked.iter().map(|(_, k)| k).sum();
        if r.passed() {
            let _ = writeln!(s, "{title}: pass ({equations} equations)");
        } else {
            let _ = writeln!(s, "{title}: FAIL\n{r}");
        }
    }
    let c = &q.category;
    let _ = writeln!(s, "codescent: {} objects, {} arrows; hom counts:", c.n_objects(), c.n_arrows());
    s.push_str(&hom_table(c));
    if compare {
        match verify::codescent_matches_classifier(&args.morphism, bound) {
            Ok(detail) => {
                let _ = writeln!(s, "classifier comparison: pass ({detail})");
            }
            Err(detail) => {
                ok = false;
                let _ = writeln!(s, "classifier comparison: FAIL ({detail})");
            }
        }
    }
    report(c, &args.morphism, format, s, out)?;
    Ok(ok)
}

fn quotient(
    category: Option<String>,
    morphism: Option<String>,
    max_size: usize,
    passes: usize,
    format: Report,
    out: Option<PathBuf>,
) -> Result<bool> {
    let (c, name) = match (category, morphism) {
        (Some(arg), None) => {
            let json: CategoryJson = read_json(&arg, "category")?;
            (FiniteCategory::from_json(&json)?, "quotient".to_string())
        }
        (None, Some(spec)) => {
            let cls = Classifier::new(morphism_from_spec(&spec)?)?;
            (classifier_category(&cls, 0, max_size)?.category, spec)
        }
        _ => bail!("give a category or --morphism"),
    };
    let iq = quotient_identify_isos(&c, passes)?;
    let q = &iq.category;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} objects, {} arrows -> {} objects, {} arrows after {} passes; hom counts:",
        c.n_objects(),
        c.n_arrows(),
        q.n_objects(),
        q.n_arrows(),
        iq.passes
    );
    s.push_str(&hom_table(q));
    report(q, &name, format, s, out)?;
    Ok(true)
}
