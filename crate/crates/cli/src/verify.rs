use std::collections::BTreeSet;
use std::time::Instant;

use anyhow::Result;
use clap::{Args, CommandFactory, ValueEnum};
use serde_json::json;

use poset_operads::enumeration::all_posets;
use poset_operads::hopf;
use poset_operads::operad::{labeled_grid, verify_axioms, verify_involution, verify_mixed};
use poset_operads::report::Failure;
use poset_operads::species::verify_phi_morphism;
use poset_operads::structure::{is_nabla_compatible, is_wn, theta, theta_inverse, verify_suboperad_relations};
use poset_operads::{Family, Label, Poset, VerificationReport};

use crate::output::Rendered;
use crate::{Cli, FamilyArg};

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite to run
    #[arg(value_enum, conflicts_with = "law_flag")]
    law: Option<Law>,
    /// Same as the positional suite name
    #[arg(long = "law", value_enum, id = "law_flag")]
    law_flag: Option<Law>,
    /// Restrict `axioms` to one family (default: all four)
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Largest poset size in the grid
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    /// Run every suite
    #[arg(long, conflicts_with_all = ["law", "law_flag"])]
    all: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Law {
    Axioms,
    Mixed,
    Phi,
    Involution,
    Suboperads,
    Theta,
    Products,
    Nap,
    Coalgebra,
    Bialgebra,
    Infinitesimal,
    Gram,
    Opposite,
    /// Every Hopf suite
    Hopf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HopfLaw {
    Products,
    Nap,
    Coalgebra,
    Bialgebra,
    Infinitesimal,
    Gram,
    Opposite,
    All,
}

impl HopfLaw {
    pub fn run(self, n: usize) -> poset_operads::Result<VerificationReport> {
        match self {
            HopfLaw::Products => hopf::verify_products(n),
            HopfLaw::Nap => hopf::verify_nap(n),
            HopfLaw::Coalgebra => hopf::verify_coalgebra(n),
            HopfLaw::Bialgebra => hopf::verify_bialgebra(n),
            HopfLaw::Infinitesimal => hopf::verify_infinitesimal(n),
            HopfLaw::Gram => hopf::verify_gram(n),
            HopfLaw::Opposite => hopf::verify_opposite_duality(n),
            HopfLaw::All => hopf::verify_all(n),
        }
    }
}

pub fn run(args: VerifyArgs) -> Result<Rendered> {
    let n = args.max_n;
    let families: Vec<Family> = match args.family {
        Some(f) => vec![f.into()],
        None => Family::ALL.to_vec(),
    };
    let laws = match (args.all, args.law.or(args.law_flag)) {
        (true, _) => vec![
            Law::Axioms,
            Law::Mixed,
            Law::Phi,
            Law::Involution,
            Law::Suboperads,
            Law::Theta,
            Law::Hopf,
        ],
        (false, Some(law)) => vec![law],
        (false, None) => Cli::command()
            .error(
                clap::error::ErrorKind::MissingRequiredArgument,
                "name a suite or pass --all",
            )
            .exit(),
    };
    let mut out = Vec::new();
    for law in laws {
        match law {
            Law::Axioms => out.extend(families.iter().map(|&f| verify_axioms(f, n))),
            Law::Mixed => out.push(verify_mixed(n.max(2), n.saturating_sub(1).max(1))),
            Law::Phi => out.push(verify_phi(n)),
            Law::Involution => out.push(verify_involution(n)),
            Law::Suboperads => out.push(verify_suboperad_relations()),
            // θ is cheap next to the others, so it runs two sizes further.
            Law::Theta => out.push(verify_theta((n + 2).min(6))?),
            Law::Products => out.push(hopf::verify_products(n)?),
            Law::Nap => out.push(hopf::verify_nap(n)?),
            Law::Coalgebra => out.push(hopf::verify_coalgebra(n)?),
            Law::Bialgebra => out.push(hopf::verify_bialgebra(n)?),
            Law::Infinitesimal => out.push(hopf::verify_infinitesimal(n)?),
            Law::Gram => out.push(hopf::verify_gram(n)?),
            Law::Opposite => out.push(hopf::verify_opposite_duality(n)?),
            Law::Hopf => out.push(hopf::verify_all(n)?),
        }
    }
    reports(out)
}

pub fn reports(reports: Vec<VerificationReport>) -> Result<Rendered> {
    let passed = reports.iter().all(VerificationReport::passed);
    let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    let doc = json!({
        "passed": passed,
        "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
    });
    let r = Rendered::text(doc, text);
    Ok(if passed { r } else { r.failed() })
}

/// The refinement map against `∘` and `•`, for outer and inner posets with
/// at most `n` elements.
fn verify_phi(n: usize) -> VerificationReport {
    let inners = labeled_grid("b", 1, n);
    let cases: Vec<(Poset, Label)> = labeled_grid("a", 1, n)
        .into_iter()
        .flat_map(|a| a.labels().to_vec().into_iter().map(move |v| (a.clone(), v)))
        .collect();
    VerificationReport::run("phi morphism", &cases, |(a, v)| {
        let mut fails = Vec::new();
        for b in &inners {
            if !verify_phi_morphism(a, v.as_str(), b)? {
                fails.push(Failure::text(format!("A={a} at {v}, B={b}"), "", ""));
            }
        }
        Ok((inners.len(), fails))
    })
}

/// `θ` is injective on N-free posets of each size, lands in the
/// nabla-compatible ones, hits as many as there are, and inverts.
fn verify_theta(n: usize) -> poset_operads::Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new("theta bijection");
    for k in 1..=n {
        let mut images = BTreeSet::new();
        let (mut wn, mut compatible, mut bad) = (0usize, 0usize, Vec::new());
        all_posets(k, &mut |p: &Poset| {
            if is_nabla_compatible(p) {
                compatible += 1;
            }
            if is_wn(p) {
                wn += 1;
                match theta(p) {
                    Ok(t) if is_nabla_compatible(&t) && theta_inverse(&t).as_ref() == Ok(p) => {
                        images.insert(t);
                    }
                    _ => bad.push(p.to_string()),
                }
            }
        })?;
        report.check_eq(format!("n={k}: |image| = |N-free|"), &images.len(), &wn);
        report.check_eq(format!("n={k}: |N-free| = |nabla-compatible|"), &wn, &compatible);
        for p in bad {
            report.check(format!("round trip fails on {p}"), false);
        }
    }
    report.wall_time = start.elapsed();
    Ok(report)
}
