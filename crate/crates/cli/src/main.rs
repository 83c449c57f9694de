use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use poset_operads::canon::canon_key;
use poset_operads::enumeration::{all_isoclasses, all_posets, count_table, ClassFilter};
use poset_operads::hopf::{self, ClassSum, Coproduct, Product};
use poset_operads::operad::{compose, Family};
use poset_operads::species::{phi, phi_inverse};
use poset_operads::structure::{
    br_split, closure_nabla, closure_triple, closure_wn, is_nabla_compatible, is_wn, theta, theta_inverse, wn_factorize,
};
use poset_operads::{FormalSum, Poset};

mod golden;
mod output;
mod verify;

use output::{Format, Rendered};

#[derive(Parser)]
#[command(name = "posets", version)]
#[command(about = "Compose, classify and enumerate finite posets")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for verification and enumeration (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Insert one poset into another at a vertex
    Compose {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Vertex of the outer poset that receives the inner one
        #[arg(long)]
        at: String,
        outer: PathBuf,
        inner: PathBuf,
    },
    /// Sum of all refinements, or its inverse
    Phi {
        #[arg(long)]
        inverse: bool,
        poset: PathBuf,
    },
    /// Products and coproducts on isomorphism classes
    Hopf {
        #[command(subcommand)]
        command: HopfCommand,
    },
    /// N-freeness, nabla-compatibility and both factorizations
    Classify { poset: PathBuf },
    /// The bijection from N-free to nabla-compatible posets
    Theta {
        #[arg(long)]
        inverse: bool,
        poset: PathBuf,
    },
    /// Classes generated by a suboperad's generators
    Closure {
        #[arg(long, value_enum)]
        family: ClosureArg,
        #[arg(long)]
        max_n: usize,
    },
    /// Every poset on {1..n}, one JSON document per line
    Enumerate {
        #[arg(long)]
        n: usize,
        /// One representative per isomorphism class
        #[arg(long)]
        iso: bool,
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum)]
        filter: Option<FilterArg>,
    },
    /// Labeled and unlabeled counts by size
    Sequences {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum)]
        table: Option<TableArg>,
    },
    /// Run verification suites
    Verify(verify::VerifyArgs),
    /// Recompute the catalogue of worked examples and diff it against the golden files
    WorkedExamples {
        /// Rewrite the golden files from the current output
        #[arg(long)]
        bless: bool,
        #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/golden"))]
        golden: PathBuf,
    },
}

#[derive(Subcommand)]
enum HopfCommand {
    Prod {
        #[arg(long)]
        op: Product,
        a: PathBuf,
        b: PathBuf,
    },
    Coprod {
        #[arg(long)]
        op: Coproduct,
        a: PathBuf,
    },
    Verify {
        #[arg(long, value_enum)]
        law: verify::HopfLaw,
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Circ,
    Bullet,
    Down,
    Up,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Circ => Family::Circ,
            FamilyArg::Bullet => Family::Bullet,
            FamilyArg::Down => Family::Down,
            FamilyArg::Up => Family::Up,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureArg {
    Wn,
    Nabla,
    Triple,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Wn,
    Nabla,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Md,
    Csv,
}

fn read_poset(path: &Path) -> Result<Poset> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Poset::from_json(&text)?)
}

fn sum_rows(s: &FormalSum) -> Vec<Vec<String>> {
    s.iter().map(|(p, c)| vec![c.to_string(), p.to_string()]).collect()
}

fn run(cli: Cli) -> Result<Rendered> {
    let format = cli.format;
    match cli.command {
        Command::Compose {
            family,
            at,
            outer,
            inner,
        } => {
            let family = Family::from(family);
            let sum = compose(family, &read_poset(&outer)?, &at, &read_poset(&inner)?)?;
            match (family, sum.as_single()) {
                (Family::Circ, _) | (_, None) => Ok(Rendered::table(
                    sum.to_json(),
                    &["coefficient", "poset"],
                    sum_rows(&sum),
                )),
                (_, Some(p)) => Ok(Rendered::text(p.to_json(), p.to_string())),
            }
        }
        Command::Phi { inverse, poset } => {
            let x = FormalSum::term(read_poset(&poset)?);
            let y = if inverse { phi_inverse(&x) } else { phi(&x) };
            Ok(Rendered::table(y.to_json(), &["coefficient", "poset"], sum_rows(&y)))
        }
        Command::Hopf { command } => hopf_command(command),
        Command::Classify { poset } => classify(&read_poset(&poset)?),
        Command::Theta { inverse, poset } => {
            let p = read_poset(&poset)?;
            let q = if inverse { theta_inverse(&p)? } else { theta(&p)? };
            Ok(Rendered::text(q.to_json(), q.to_string()))
        }
        Command::Closure { family, max_n } => {
            let (name, keys) = match family {
                ClosureArg::Wn => ("wn", closure_wn(max_n)?),
                ClosureArg::Nabla => ("nabla", closure_nabla(max_n)?),
                ClosureArg::Triple => ("triple", closure_triple(max_n)?),
            };
            let mut by_size = vec![0usize; max_n + 1];
            for k in &keys {
                by_size[k.size()] += 1;
            }
            let classes: Vec<Value> = keys
                .iter()
                .map(|k| json!({"class": k.to_string(), "size": k.size(), "poset": k.poset().to_json()}))
                .collect();
            let rows = (1..=max_n)
                .map(|n| vec![n.to_string(), by_size[n].to_string()])
                .collect();
            Ok(Rendered::table(
                json!({"family": name, "max_n": max_n, "by_size": &by_size[1..], "classes": classes}),
                &["n", "classes"],
                rows,
            ))
        }
        Command::Enumerate {
            n,
            iso,
            connected,
            filter,
        } => {
            enumerate(n, iso, connected, filter, format)?;
            Ok(Rendered::nothing())
        }
        Command::Sequences { max_n, table } => {
            let t = count_table(max_n)?;
            let text = match table {
                Some(TableArg::Csv) => t.to_csv(),
                _ => t.to_markdown(),
            };
            match table {
                Some(_) => Ok(Rendered::raw(text)),
                None => Ok(Rendered::text(serde_json::to_value(&t)?, text)),
            }
        }
        Command::Verify(args) => verify::run(args),
        Command::WorkedExamples { bless, golden } => golden::run(&golden, bless),
    }
}

fn hopf_command(command: HopfCommand) -> Result<Rendered> {
    match command {
        HopfCommand::Prod { op, a, b } => {
            let x = ClassSum::of(&read_poset(&a)?)?;
            let y = ClassSum::of(&read_poset(&b)?)?;
            let z = hopf::product(op, &x, &y);
            let rows = z
                .iter()
                .map(|(k, c)| vec![c.to_string(), k.to_string(), k.poset().to_string()])
                .collect();
            Ok(Rendered::table(z.to_json(), &["coefficient", "class", "poset"], rows))
        }
        HopfCommand::Coprod { op, a } => {
            let x = ClassSum::of(&read_poset(&a)?)?;
            let t = hopf::coproduct(op, &x);
            let rows = t
                .iter()
                .map(|((l, r), c)| vec![c.to_string(), l.poset().to_string(), r.poset().to_string()])
                .collect();
            Ok(Rendered::table(t.to_json(), &["coefficient", "left", "right"], rows))
        }
        HopfCommand::Verify { law, max_n } => verify::reports(vec![law.run(max_n)?]),
    }
}

fn classify(p: &Poset) -> Result<Rendered> {
    let wn = is_wn(p);
    let nabla = is_nabla_compatible(p);
    let factors = match wn_factorize(p) {
        Ok(f) => Value::Array(f.factors.iter().map(Poset::to_json).collect()),
        Err(_) => Value::Null,
    };
    let br = match br_split(p) {
        Ok((b, r)) => json!({"b": b.to_json(), "r": r.to_json()}),
        Err(_) => Value::Null,
    };
    let class = canon_key(p).map(|k| k.to_string()).ok();
    let mut text = format!("wn                {wn}\nnabla_compatible  {nabla}\n");
    if let Ok(f) = wn_factorize(p) {
        let parts: Vec<String> = f.factors.iter().map(Poset::to_string).collect();
        text.push_str(&format!("wn_factors        {}\n", parts.join(" ↓ ")));
    }
    if let Ok((b, r)) = br_split(p) {
        text.push_str(&format!("br                b = {b}, r = {r}\n"));
    }
    if let Some(c) = &class {
        text.push_str(&format!("class             {c}\n"));
    }
    let doc = json!({
        "class": class,
        "wn": wn,
        "nabla_compatible": nabla,
        "wn_factors": factors,
        "br": br,
    });
    Ok(Rendered::text(doc, text.trim_end().to_owned()))
}

fn enumerate(n: usize, iso: bool, connected: bool, filter: Option<FilterArg>, format: Format) -> Result<()> {
    let keep = |p: &Poset| {
        (!connected || p.is_connected())
            && match filter {
                Some(FilterArg::Wn) => is_wn(p),
                Some(FilterArg::Nabla) => is_nabla_compatible(p),
                None => true,
            }
    };
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    if iso {
        let base = if connected {
            ClassFilter::Connected
        } else {
            ClassFilter::All
        };
        for class in all_isoclasses(n, base)? {
            let p = &class.representative;
            if !keep(p) {
                continue;
            }
            let line = match format {
                Format::Json => json!({
                    "class": class.key.to_string(),
                    "automorphisms": class.automorphisms,
                    "poset": p.to_json(),
                })
                .to_string(),
                Format::Table => format!("{}  {}  {}", class.key, class.automorphisms, p),
            };
            output::line(&mut out, &line)?;
        }
    } else {
        let mut result = Ok(());
        all_posets(n, &mut |p: &Poset| {
            if result.is_ok() && keep(p) {
                let line = match format {
                    Format::Json => p.to_json().to_string(),
                    Format::Table => p.to_string(),
                };
                result = output::line(&mut out, &line);
            }
        })?;
        result?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            Cli::command()
                .error(clap::error::ErrorKind::InvalidValue, "--jobs must be at least 1")
                .exit();
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let format = cli.format;
    match run(cli) {
        Ok(rendered) => rendered.emit(format),
        Err(e) => {
            output::report_error(&e);
            ExitCode::FAILURE
        }
    }
}
