//! Named strategies selected at runtime.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::latgeom::{mixed_volume, IntegerLattice, InclusionExclusion, MixedCells, MixedVolumeStrategy};
use crate::oracle::{affine_algebra, torus_algebra, trace_oracle, Embedding};
use crate::poly::{Polynomial, Rational};
use crate::resultants::{degrees_of, leading_form_resultant, macaulay_pencil};
use crate::traceform::{trace_sparse, TraceMethod, TraceResult};

/// Name-indexed collection of strategy objects.
pub struct Registry<T: ?Sized> {
    entries: BTreeMap<&'static str, Arc<T>>,
}

impl<T: ?Sized> Default for Registry<T> {
    fn default() -> Self {
        Registry { entries: BTreeMap::new() }
    }
}

impl<T: ?Sized> Registry<T> {
    pub fn register(&mut self, name: &'static str, item: Arc<T>) {
        self.entries.insert(name, item);
    }

    pub fn get(&self, name: &str) -> Result<Arc<T>> {
        self.entries.get(name).cloned().ok_or_else(|| {
            Error::Invalid(format!("unknown strategy `{name}` (known: {})", self.names().join(", ")))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

/// `Trace(Times_{p/q})` on the zeros of a square system.
#[derive(Clone, Debug)]
pub struct TraceJob {
    pub p: Polynomial,
    pub q: Polynomial,
    pub f: Vec<Polynomial>,
    pub seed: u64,
}

/// The quotient algebra an oracle value was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub algebra: Embedding,
    pub dimension: usize,
    pub value: Rational,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceOutcome {
    pub result: TraceResult,
    pub oracle: Option<OracleCheck>,
    /// Set when no oracle algebra had the expected dimension.
    pub oracle_note: Option<String>,
}

pub trait TraceBackend: Send + Sync {
    fn name(&self) -> &'static str;
    fn trace(&self, job: &TraceJob) -> Result<TraceOutcome>;
}

fn plain(result: TraceResult) -> TraceOutcome {
    TraceOutcome { result, oracle: None, oracle_note: None }
}

pub struct SparseBackend;

impl TraceBackend for SparseBackend {
    fn name(&self) -> &'static str {
        "ce"
    }

    fn trace(&self, job: &TraceJob) -> Result<TraceOutcome> {
        trace_sparse(&job.p, &job.q, &job.f, job.seed).map(plain)
    }
}

/// Dense resultants; counts affine zeros, so it matches the torus trace only when no zero lies
/// on a coordinate hyperplane.
pub struct MacaulayBackend;

impl TraceBackend for MacaulayBackend {
    fn name(&self) -> &'static str {
        "macaulay"
    }

    fn trace(&self, job: &TraceJob) -> Result<TraceOutcome> {
        if job.f.iter().chain([&job.p, &job.q]).any(|g| g.is_laurent()) {
            return Err(Error::Invalid("the Macaulay backend needs ordinary polynomials".into()));
        }
        if leading_form_resultant(&job.f)?.is_zero() {
            return Err(Error::Degenerate("leading forms have a common root at infinity".into()));
        }
        let degrees = degrees_of(&job.f)?;
        let d0 = job.q.total_degree().unwrap_or(0).max(job.p.total_degree().unwrap_or(0));
        let x = macaulay_pencil(d0, &job.q, &job.p, &job.f, &degrees)?;
        let denominator = x.coeff(0);
        if denominator.is_zero() {
            return Err(Error::ZeroDivisor("q vanishes at a common zero".into()));
        }
        let numerator = x.coeff(1);
        Ok(plain(TraceResult {
            value: &numerator / &denominator,
            numerator,
            denominator,
            method: TraceMethod::DenseResultant,
            lattice: None,
            matrix_size: None,
        }))
    }
}

/// Picks the algebra whose dimension is the generic root count `MV(P_1, .., P_k)`.
///
/// The torus algebra comes first. A specialization can push zeros onto coordinate hyperplanes
/// while the resultant formula keeps counting them, so the affine algebra is the fallback.
pub fn oracle_trace(job: &TraceJob) -> Result<std::result::Result<(Embedding, usize, Rational), String>> {
    let k = job.q.arity();
    let supports: Vec<_> = job.f.iter().map(|g| g.support()).collect();
    let expected = mixed_volume(&supports, &IntegerLattice::full(k))?;
    let torus = torus_algebra(&job.f)?;
    if BigInt::from(torus.dimension()) == expected {
        return Ok(Ok((Embedding::Torus, torus.dimension(), trace_oracle(&job.p, &job.q, &torus)?)));
    }
    let polynomial = job.f.iter().chain([&job.p, &job.q]).all(|g| !g.is_laurent());
    if polynomial {
        let affine = affine_algebra(&job.f)?;
        if BigInt::from(affine.dimension()) == expected {
            return Ok(Ok((Embedding::Affine, affine.dimension(), trace_oracle(&job.p, &job.q, &affine)?)));
        }
    }
    Ok(Err(format!(
        "no oracle algebra has dimension {expected} (torus algebra has dimension {})",
        torus.dimension()
    )))
}

pub struct OracleBackend;

impl TraceBackend for OracleBackend {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn trace(&self, job: &TraceJob) -> Result<TraceOutcome> {
        let (algebra, dimension, value) = oracle_trace(job)?.map_err(Error::Degenerate)?;
        let result = TraceResult {
            value: value.clone(),
            numerator: value.clone(),
            denominator: Rational::from_integer(1.into()),
            method: TraceMethod::Oracle,
            lattice: None,
            matrix_size: None,
        };
        Ok(TraceOutcome { result, oracle: Some(OracleCheck { algebra, dimension, value, agrees: true }), oracle_note: None })
    }
}

/// The sparse formula, checked against the oracle.
pub struct AutoBackend;

impl TraceBackend for AutoBackend {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn trace(&self, job: &TraceJob) -> Result<TraceOutcome> {
        let result = trace_sparse(&job.p, &job.q, &job.f, job.seed)?;
        match oracle_trace(job)? {
            Ok((algebra, dimension, value)) => {
                let agrees = value == result.value;
                Ok(TraceOutcome { result, oracle: Some(OracleCheck { algebra, dimension, value, agrees }), oracle_note: None })
            }
            Err(note) => Ok(TraceOutcome { result, oracle: None, oracle_note: Some(note) }),
        }
    }
}

pub fn trace_backends() -> Registry<dyn TraceBackend> {
    let mut r: Registry<dyn TraceBackend> = Registry::default();
    for b in [Arc::new(AutoBackend) as Arc<dyn TraceBackend>, Arc::new(SparseBackend), Arc::new(MacaulayBackend), Arc::new(OracleBackend)] {
        r.register(b.name(), b);
    }
    r
}

pub fn mixed_volume_strategies() -> Registry<dyn MixedVolumeStrategy> {
    let mut r: Registry<dyn MixedVolumeStrategy> = Registry::default();
    for s in [Arc::new(InclusionExclusion) as Arc<dyn MixedVolumeStrategy>, Arc::new(MixedCells::default())] {
        r.register(s.name(), s);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn parse(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, &v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    fn example_one() -> TraceJob {
        let v = ["t1", "t2", "t3"];
        TraceJob {
            p: parse("t2^2", &v),
            q: parse("1", &v),
            f: vec![
                parse("-1 + t1^2 + t2^2", &v),
                parse("-1 + t2^2 + t3^2", &v),
                parse("-1 + t1^2 + t2^2 + t3^2", &v),
            ],
            seed: 1,
        }
    }

    #[test]
    fn names() {
        assert_eq!(trace_backends().names(), vec!["auto", "ce", "macaulay", "oracle"]);
        assert_eq!(mixed_volume_strategies().names(), vec!["inclusion-exclusion", "mixed-cells"]);
        assert!(trace_backends().get("nope").is_err());
    }

    #[test]
    fn every_backend_on_example_one() {
        let job = example_one();
        let reg = trace_backends();
        for name in reg.names() {
            let out = reg.get(name).unwrap().trace(&job).unwrap();
            assert_eq!(out.result.value, rat(8), "{name}");
        }
        let auto = reg.get("auto").unwrap().trace(&job).unwrap();
        let check = auto.oracle.unwrap();
        assert!(check.agrees);
        // every zero has t3 = 0
        assert_eq!(check.algebra, Embedding::Affine);
        assert_eq!(check.dimension, 8);
    }
}
