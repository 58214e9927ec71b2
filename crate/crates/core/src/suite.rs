//! Bundled small instances and the full verification suite.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evaluate::{invariance_report, InvarianceReport, StarMode};
use crate::local_model::{local_model_report, DecompositionSpec, Flavor, LocalModelReport, SummandKind, SummandSpec};
use crate::oracle::{check_spanning, fft_check, FftReport, SpanOptions, SpanningReport};
use crate::pfaffian_so::{
    generic_degree_report, pf_square_in_trace_span, pfaffian_identity_check, so_extension_check, DegreeReport,
    PfaffianContext, PfaffianIdentityReport, SoExtensionReport,
};
use crate::quiver::{build_doubled, DimVector, SymQuiver};
use crate::words::enumerate_cycles;

/// A named quiver with a dimension vector.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: &'static str,
    pub quiver: SymQuiver,
    pub alpha: DimVector,
}

fn instance(name: &'static str, quiver: SymQuiver, dims: &[usize]) -> Instance {
    Instance {
        name,
        quiver,
        alpha: DimVector::from_raw(dims.to_vec()),
    }
}

/// Small instances covering every vertex class and mixtures of them.
pub fn bundled_instances() -> Vec<Instance> {
    let b = SymQuiver::builder;
    vec![
        instance("orthogonal-loop-2", b().orthogonal("s").arrow("a", "s", "s").build().unwrap(), &[2]),
        instance(
            "orthogonal-pair-1-2",
            b().orthogonal("s1")
                .orthogonal("s2")
                .arrow("a", "s1", "s2")
                .arrow("b", "s2", "s1")
                .build()
                .unwrap(),
            &[1, 2],
        ),
        instance(
            "orthogonal-to-symplectic",
            b().orthogonal("s").symplectic("t").arrow("a", "s", "t").build().unwrap(),
            &[2, 2],
        ),
        instance("symplectic-loop-2", b().symplectic("t").arrow("a", "t", "t").build().unwrap(), &[2]),
        instance(
            "gl-couple-1",
            b().gl_pair("u", "u*")
                .arrow("a", "u", "u*")
                .arrow("b", "u*", "u")
                .build()
                .unwrap(),
            &[1, 1],
        ),
        instance(
            "gl-loop-2",
            b().gl_pair("u", "u*").arrow("a", "u", "u").build().unwrap(),
            &[2, 2],
        ),
        instance("orthogonal-loop-3", b().orthogonal("s").arrow("a", "s", "s").build().unwrap(), &[3]),
        instance(
            "mixed-three-classes",
            b().orthogonal("s")
                .symplectic("t")
                .gl_pair("u", "u*")
                .arrow("a", "s", "t")
                .arrow("b", "t", "t")
                .arrow("c", "u", "t")
                .build()
                .unwrap(),
            &[1, 2, 1, 1],
        ),
        instance(
            "mixed-triangle",
            b().orthogonal("s")
                .symplectic("t")
                .gl_pair("u", "u*")
                .arrow("a", "s", "t")
                .arrow("b", "t", "u")
                .arrow("c", "u", "s")
                .build()
                .unwrap(),
            &[1, 2, 1, 1],
        ),
        instance(
            "orthogonal-symplectic-both-ways",
            b().orthogonal("s")
                .symplectic("t")
                .arrow("a", "s", "t")
                .arrow("b", "t", "s")
                .build()
                .unwrap(),
            &[2, 2],
        ),
        instance(
            "orthogonal-gl-both-ways",
            b().orthogonal("s")
                .gl_pair("u", "u*")
                .arrow("a", "s", "u")
                .arrow("b", "u", "s")
                .build()
                .unwrap(),
            &[2, 1, 1],
        ),
        instance(
            "orthogonal-two-loops-2",
            b().orthogonal("s")
                .arrow("a", "s", "s")
                .arrow("b", "s", "s")
                .build()
                .unwrap(),
            &[2],
        ),
    ]
}

/// The `(N, N', i)` triples of the multilinear suite.
pub const FFT_CASES: [(usize, usize, usize); 9] = [
    (1, 0, 1),
    (2, 0, 1),
    (2, 0, 2),
    (3, 0, 2),
    (0, 2, 1),
    (0, 2, 2),
    (1, 2, 1),
    (2, 2, 1),
    (2, 2, 2),
];

/// Matrix sizes and case count of the pfaffian identity check.
pub const PFAFFIAN_SIZES: [usize; 4] = [2, 4, 6, 8];
pub const PFAFFIAN_CASES: usize = 200;

/// Decomposition specs exercised by the local-model section.
pub fn bundled_specs() -> Vec<DecompositionSpec> {
    use SummandKind::*;
    let orth = |g: usize, ranks: &[usize]| {
        DecompositionSpec::orthogonal(g, ranks.iter().map(|&r| SummandSpec::new(OrthogonalStable, r, 1)).collect())
    };
    vec![
        orth(2, &[1, 1]),
        orth(2, &[1, 2]),
        orth(3, &[1, 1]),
        orth(2, &[2, 2]),
        orth(2, &[1, 1, 1]),
        orth(2, &[1, 1, 1, 1]),
        DecompositionSpec::orthogonal(2, vec![SummandSpec::new(NonSelfDualPair, 2, 1)]),
        DecompositionSpec::new(2, Flavor::Symplectic, vec![SummandSpec::new(SymplecticStable, 2, 1)]),
        DecompositionSpec::orthogonal(
            2,
            vec![
                SummandSpec::new(OrthogonalStable, 1, 2),
                SummandSpec::new(SymplecticStable, 2, 2),
                SummandSpec::new(NonSelfDualPair, 1, 1),
            ],
        ),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub max_degree: usize,
    pub max_word_len: usize,
    pub samples: usize,
    pub seed: u64,
    pub guard_rail: usize,
    pub mode: StarMode,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_degree: 4,
            max_word_len: 4,
            samples: 120,
            seed: 0,
            guard_rail: crate::oracle::DEFAULT_GUARD_RAIL,
            mode: StarMode::Faithful,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceInvariance {
    pub instance: String,
    pub report: InvarianceReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfSquare {
    pub dim_w: usize,
    pub in_trace_span: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfaffianSection {
    pub identity: PfaffianIdentityReport,
    pub extension: Vec<SoExtensionReport>,
    pub degrees: Vec<DegreeReport>,
    pub pf_square: Vec<PfSquare>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub fft: Vec<FftReport>,
    pub spanning: Vec<SpanningReport>,
    pub invariance: Vec<InstanceInvariance>,
    pub pfaffian: PfaffianSection,
    pub local: Vec<LocalModelReport>,
    pub pass: bool,
}

/// Pfaffian identity, extension and degree checks on `so(W)^m` for
/// `dim W = 2, m = 1..=3` (plus `dim W = 4, m = 1`).
pub fn pfaffian_section(cfg: &SuiteConfig) -> Result<PfaffianSection> {
    let seed = crate::rng::derive_seed(cfg.seed, "pfaffian-suite");
    let identity = pfaffian_identity_check(&PFAFFIAN_SIZES, PFAFFIAN_CASES, seed)?;
    let mut extension = Vec::new();
    let mut degrees = Vec::new();
    for m in 1..=3 {
        let ctx = PfaffianContext::new(2, m)?;
        extension.push(so_extension_check(&ctx, cfg.samples.min(50), seed)?);
        degrees.push(generic_degree_report(&ctx, cfg.max_degree, cfg.guard_rail)?);
    }
    extension.push(so_extension_check(&PfaffianContext::new(4, 1)?, cfg.samples.min(50), seed)?);
    let pf_square = [2, 4]
        .into_iter()
        .map(|dim_w| {
            Ok(PfSquare {
                dim_w,
                in_trace_span: pf_square_in_trace_span(dim_w)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = identity.failures == 0
        && extension.iter().all(|r| r.pass)
        && degrees.iter().all(|r| r.accounted())
        && pf_square.iter().all(|p| p.in_trace_span);
    Ok(PfaffianSection {
        identity,
        extension,
        degrees,
        pf_square,
        pass,
    })
}

/// Spanning checks for one instance at degrees `1..=max_degree`.
pub fn spanning_for(inst: &Instance, cfg: &SuiteConfig) -> Result<Vec<SpanningReport>> {
    let opts = SpanOptions {
        max_word_len: cfg.max_word_len,
        guard_rail: cfg.guard_rail,
        mode: cfg.mode,
    };
    (1..=cfg.max_degree)
        .map(|d| {
            let mut r = check_spanning(&inst.quiver, &inst.alpha, d, &opts)?;
            r.instance = inst.name.to_string();
            Ok(r)
        })
        .collect()
}

/// Runs the multilinear suite, the spanning suite and invariance fuzzing on
/// the bundled instances.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    use rayon::prelude::*;
    let fft = FFT_CASES
        .par_iter()
        .map(|&(n, np, i)| fft_check(n, np, i, cfg.guard_rail))
        .collect::<Result<Vec<_>>>()?;
    let instances = bundled_instances();
    let spanning = instances
        .par_iter()
        .map(|inst| spanning_for(inst, cfg))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let invariance = instances
        .iter()
        .enumerate()
        .map(|(k, inst)| {
            let words = enumerate_cycles(&build_doubled(&inst.quiver), cfg.max_word_len);
            let report = invariance_report(
                &inst.quiver,
                &inst.alpha,
                &words,
                cfg.samples,
                cfg.seed.wrapping_add(k as u64),
                cfg.mode,
            )?;
            Ok(InstanceInvariance {
                instance: inst.name.to_string(),
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pfaffian = pfaffian_section(cfg)?;
    let local = bundled_specs()
        .iter()
        .map(local_model_report)
        .collect::<Result<Vec<_>>>()?;
    let pass = fft.iter().all(|r| r.pass)
        && spanning.iter().all(|r| r.pass)
        && invariance.iter().all(|r| r.report.passed())
        && pfaffian.pass
        && local.iter().all(|r| r.consistent());
    Ok(SuiteReport {
        config: *cfg,
        fft,
        spanning,
        invariance,
        pfaffian,
        local,
        pass,
    })
}
