//! Named verification suites run by `orlicz verify`.

use std::fmt;
use std::str::FromStr;

use orlicz_core::domain::Sampling;
use orlicz_core::inclusion::{self, HolderSetup};
use orlicz_core::{
    Ball, BoxRegion, Corpus, CorpusSpec, LogGrid, QuadratureSpec, Region, Result, SimpleFunction, TheoremReport,
    Weight, YoungFunction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lemma11,
    Lemma21,
    Thm22,
    Lemma24,
    Thm25,
    Holder,
    Cor33,
    Remark26,
    Diagram,
    All,
}

impl Suite {
    pub const MEMBERS: [Suite; 9] = [
        Suite::Lemma11,
        Suite::Lemma21,
        Suite::Thm22,
        Suite::Lemma24,
        Suite::Thm25,
        Suite::Holder,
        Suite::Cor33,
        Suite::Remark26,
        Suite::Diagram,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Lemma11 => "lemma11",
            Suite::Lemma21 => "lemma21",
            Suite::Thm22 => "thm22",
            Suite::Lemma24 => "lemma24",
            Suite::Thm25 => "thm25",
            Suite::Holder => "holder",
            Suite::Cor33 => "cor33",
            Suite::Remark26 => "remark26",
            Suite::Diagram => "diagram",
            Suite::All => "all",
        }
    }

    pub fn members(&self) -> Vec<Suite> {
        match self {
            Suite::All => Self::MEMBERS.to_vec(),
            s => vec![*s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::MEMBERS
            .iter()
            .chain([Suite::All].iter())
            .find(|m| m.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Inputs shared by the suites. `None` fields fall back to each suite's
/// default example.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub size: usize,
    pub dim: usize,
    pub pairs: usize,
    pub samples: usize,
    pub quadrature: QuadratureSpec,
    pub phi1: Option<YoungFunction>,
    pub phi2: Option<YoungFunction>,
    pub u1: Option<Weight>,
    pub u2: Option<Weight>,
    pub phi: Option<YoungFunction>,
    pub weight: Option<Weight>,
    pub function: Option<SimpleFunction>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            size: 50,
            dim: 1,
            pairs: 100,
            samples: 10_000,
            quadrature: QuadratureSpec::default(),
            phi1: None,
            phi2: None,
            u1: None,
            u2: None,
            phi: None,
            weight: None,
            function: None,
        }
    }
}

fn power(p: f64) -> YoungFunction {
    YoungFunction::Power { p, c: 1.0 }
}

fn exp1() -> YoungFunction {
    YoungFunction::ExpPower { p: 1.0 }
}

impl SuiteConfig {
    fn corpus(&self, box_only: bool) -> Result<Corpus> {
        Corpus::generate(CorpusSpec { seed: self.seed, size: self.size, dim: self.dim, box_only, ..CorpusSpec::default() })
    }

    fn sampling(&self, dim: usize) -> Sampling {
        Sampling { seed: self.seed, ..Sampling::new(dim) }
    }

    fn pick<T: Clone>(v: &Option<T>, default: T) -> T {
        v.clone().unwrap_or(default)
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<TheoremReport>> {
    let mut out = Vec::new();
    for s in suite.members() {
        out.extend(run_member(s, cfg)?);
    }
    Ok(out)
}

fn run_member(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<TheoremReport>> {
    let q = cfg.quadrature;
    Ok(match suite {
        Suite::All => return run(Suite::All, cfg),
        Suite::Lemma11 => vec![inclusion::young_inverse_check(cfg.samples, cfg.seed)],
        Suite::Lemma21 => {
            let phis = [power(1.0), power(1.5), power(2.0), power(4.0), exp1()];
            vec![inclusion::char_norm_check(&phis, &[1, 2, 3], &[0.5, 1.0, 2.0])?]
        }
        Suite::Thm22 => {
            let phi1 = SuiteConfig::pick(&cfg.phi1, power(1.0));
            let phi2 = SuiteConfig::pick(&cfg.phi2, exp1());
            let u = SuiteConfig::pick(&cfg.u1, Weight::ONE);
            let cert = inclusion::establish_precedence(&phi1, &phi2)?;
            let corpus = cfg.corpus(!u.is_constant())?;
            vec![inclusion::verify_phi_inclusion(&phi1, &phi2, &u, &cert, &corpus, q)?]
        }
        Suite::Lemma24 => {
            let f = match &cfg.function {
                Some(f) => f.clone(),
                None => SimpleFunction::indicator(Region::Box(BoxRegion::interval(0.0, 1.0)?))?,
            };
            let phi = SuiteConfig::pick(&cfg.phi, power(1.0));
            let u = SuiteConfig::pick(&cfg.weight, Weight::ExpNorm { a: 1.0 });
            let sub = inclusion::establish_submultiplicative(&u, cfg.sampling(f.dim()))?;
            let xs: Vec<Vec<f64>> = [0.0, 0.5, 1.0, 2.0, 5.0]
                .iter()
                .map(|&x| {
                    let mut v = vec![0.0; f.dim()];
                    v[0] = x;
                    v
                })
                .collect();
            vec![inclusion::translation_bounds_check(&f, &phi, &u, &xs, &sub, q)?]
        }
        Suite::Thm25 => {
            let phi1 = SuiteConfig::pick(&cfg.phi1, power(2.0));
            let phi2 = SuiteConfig::pick(&cfg.phi2, power(2.0));
            let u1 = SuiteConfig::pick(&cfg.u1, Weight::PolyNorm { a: 1.0 });
            let u2 = SuiteConfig::pick(&cfg.u2, Weight::ExpNorm { a: 1.0 });
            let prec = inclusion::establish_precedence(&phi1, &phi2)?;
            let dom = inclusion::establish_domination(&u1, &u2, cfg.sampling(cfg.dim))?;
            let corpus = cfg.corpus(true)?;
            vec![inclusion::verify_weight_inclusion(&phi1, &phi2, &u1, &u2, &prec, &dom, &corpus, q)?]
        }
        Suite::Holder => {
            let pairs = Corpus::pairs(CorpusSpec {
                seed: cfg.seed,
                size: cfg.pairs,
                dim: cfg.dim,
                ..CorpusSpec::default()
            })?;
            let s = Sampling { sample_count: 2_000, ..cfg.sampling(cfg.dim) };
            let ones = [Weight::ONE, Weight::ONE, Weight::ONE];
            [(2.0, 2.0, 1.0), (3.0, 1.5, 1.0)]
                .into_iter()
                .map(|(p1, p2, p3)| {
                    let setup = HolderSetup { phi: [power(p1), power(p2), power(p3)], u: ones.clone() };
                    inclusion::holder_check(&setup, &pairs, s, q, Some(cfg.seed))
                })
                .collect::<Result<_>>()?
        }
        Suite::Cor33 => {
            let x = Ball::centered(1, 0.5)?;
            let mut corpus =
                Corpus::inside_ball(CorpusSpec { seed: cfg.seed, size: cfg.size, ..CorpusSpec::default() }, &x)?;
            corpus.functions.push(SimpleFunction::indicator(Region::Ball(x.clone()))?);
            let s = Sampling { sample_count: 2_000, ..cfg.sampling(1) };
            vec![inclusion::ball_embedding_check(2.0, 1.0, &Weight::ONE, &Weight::ONE, &x, &corpus, s, q)?]
        }
        Suite::Remark26 => {
            vec![inclusion::no_inclusion_check(&[(1.0, 2.0), (2.0, 1.0)], 1e6, LogGrid::new(1e-20, 1e20, 401), 1)?]
        }
        Suite::Diagram => {
            let phi1 = SuiteConfig::pick(&cfg.phi1, power(1.0));
            let phi2 = SuiteConfig::pick(&cfg.phi2, exp1());
            let u1 = SuiteConfig::pick(&cfg.u1, Weight::ONE);
            let u2 = SuiteConfig::pick(&cfg.u2, Weight::Constant { c: 2.0 });
            let prec = inclusion::establish_precedence(&phi1, &phi2)?;
            let dom = inclusion::establish_domination(&u1, &u2, cfg.sampling(cfg.dim))?;
            let corpus = cfg.corpus(false)?;
            vec![inclusion::strong_to_weak_check(&corpus, &phi1, &phi2, &u1, &u2, &prec, &dom)?]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::MEMBERS.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("thm99".parse::<Suite>().is_err());
        assert_eq!(Suite::All.members().len(), 9);
    }

    #[test]
    fn small_suites_pass() {
        let cfg = SuiteConfig { size: 6, pairs: 6, samples: 200, ..SuiteConfig::default() };
        for s in [Suite::Lemma11, Suite::Thm22, Suite::Remark26, Suite::Diagram, Suite::Cor33] {
            for r in run(s, &cfg).unwrap() {
                assert!(r.passed(), "{s}: {:?}", r.witness);
            }
        }
    }
}
