//! Running claims in dependency order and assembling the certificate.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::claims::{self, eliminant_irreducibility, ClaimId, ClaimResult, Context, Verdict};
use super::{FamilyConfig, FamilyConstants, BAD_PRIMES};
use crate::polyring::Irreducibility;

pub const REPORT_VERSION: &str = "1";

pub struct Verifier {
    pub config: FamilyConfig,
    pub constants: FamilyConstants,
    results: BTreeMap<ClaimId, ClaimResult>,
    pool: rayon::ThreadPool,
}

impl Verifier {
    pub fn new(config: FamilyConfig, constants: FamilyConstants) -> Self {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs.max(1))
            .build()
            .expect("thread pool");
        Verifier { config, constants, results: BTreeMap::new(), pool }
    }

    pub fn results(&self) -> &BTreeMap<ClaimId, ClaimResult> {
        &self.results
    }

    fn irreducibility_prime(&self) -> Option<u64> {
        let r = self.results.get(&ClaimId::C4)?;
        if r.verdict != Verdict::Verified {
            return None;
        }
        r.evidence.get("prime").and_then(Value::as_u64)
    }

    /// Runs `id` after its dependencies. A claim whose dependency is not
    /// verified (or assumed) is reported as `Unknown`.
    pub fn run(&mut self, id: ClaimId) -> &ClaimResult {
        if !self.results.contains_key(&id) {
            let deps = id.record().dependencies;
            for &d in deps {
                self.run(d);
            }
            let blocked: Vec<String> = deps
                .iter()
                .filter(|d| matches!(self.results[d].verdict, Verdict::Failed | Verdict::Unknown))
                .map(|d| d.to_string())
                .collect();
            let start = Instant::now();
            let ctx = Context {
                config: &self.config,
                constants: &self.constants,
                pool: &self.pool,
                irreducibility_prime: self.irreducibility_prime(),
            };
            let (mut verdict, mut evidence) = claims::run(id, &ctx);
            if !blocked.is_empty() && verdict == Verdict::Verified {
                verdict = Verdict::Unknown;
            }
            if !blocked.is_empty() {
                if let Value::Object(m) = &mut evidence {
                    m.insert("unverified_dependencies".into(), blocked.into());
                }
            }
            let result = ClaimResult {
                id,
                anchor: id.record().anchor,
                verdict,
                evidence,
                millis: start.elapsed().as_millis() as u64,
            };
            self.results.insert(id, result);
        }
        &self.results[&id]
    }

    pub fn run_all(&mut self) {
        for id in ClaimId::ALL {
            self.run(id);
        }
    }

    pub fn report(&self) -> CertificateReport {
        CertificateReport::new(self.config.clone(), self.results.values().cloned().collect())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub version: &'static str,
    pub config: FamilyConfig,
    pub claims: Vec<ClaimResult>,
    /// SHA-256 of the config and claims, timings and thread count excluded.
    pub digest: String,
}

impl CertificateReport {
    pub fn new(config: FamilyConfig, claims: Vec<ClaimResult>) -> Self {
        let mut r = CertificateReport { version: REPORT_VERSION, config, claims, digest: String::new() };
        r.digest = r.compute_digest();
        r
    }

    pub fn compute_digest(&self) -> String {
        let claims: Vec<Value> = self
            .claims
            .iter()
            .map(|c| {
                let mut v = serde_json::to_value(c).expect("serializable");
                if let Value::Object(m) = &mut v {
                    m.remove("millis");
                }
                v
            })
            .collect();
        let mut config = serde_json::to_value(&self.config).expect("serializable");
        if let Value::Object(m) = &mut config {
            m.remove("jobs");
        }
        let body = serde_json::json!({ "version": self.version, "config": config, "claims": claims });
        hex::encode(Sha256::digest(serde_json::to_vec(&body).expect("serializable")))
    }

    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| matches!(c.verdict, Verdict::Verified | Verdict::AssumedExternal))
    }

    pub fn any_failed(&self) -> bool {
        self.claims.iter().any(|c| c.verdict == Verdict::Failed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn verify_claim(id: ClaimId, config: &FamilyConfig) -> ClaimResult {
    let mut v = Verifier::new(config.clone(), FamilyConstants::default());
    v.run(id).clone()
}

pub fn verify_all(config: &FamilyConfig) -> CertificateReport {
    verify_all_with(config.clone(), FamilyConstants::default())
}

pub fn verify_all_with(config: FamilyConfig, constants: FamilyConstants) -> CertificateReport {
    let mut v = Verifier::new(config, constants);
    v.run_all();
    v.report()
}

/// Whether the eliminant has a single witness prime outside the bad primes.
pub fn has_witness_prime(constants: &FamilyConstants) -> Option<u64> {
    match eliminant_irreducibility(constants).0 {
        Irreducibility::Witness(p) if !BAD_PRIMES.contains(&p) => Some(p),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::BigRational;

    fn small() -> FamilyConfig {
        FamilyConfig { p_max: 30, t_samples: vec![BigRational::from_integer(2.into())], precision: 6, ..FamilyConfig::default() }
    }

    #[test]
    fn cheap_claims_verify() {
        let mut v = Verifier::new(small(), FamilyConstants::default());
        for id in [ClaimId::C1, ClaimId::C3, ClaimId::C9, ClaimId::C10, ClaimId::C13] {
            let r = v.run(id).clone();
            assert_eq!(r.verdict, Verdict::Verified, "{id}: {}", r.evidence);
        }
        assert_eq!(v.run(ClaimId::C14).verdict, Verdict::AssumedExternal);
    }

    #[test]
    fn perturbed_discriminant_fails() {
        let mut k = FamilyConstants::default();
        k.intersection_discriminant += 1;
        let mut v = Verifier::new(small(), k);
        assert_eq!(v.run(ClaimId::C1).verdict, Verdict::Failed);
    }

    #[test]
    fn perturbed_eliminant_fails_and_blocks_dependents() {
        let mut k = FamilyConstants::default();
        k.singular12[0] += 1;
        let mut v = Verifier::new(small(), k);
        assert_eq!(v.run(ClaimId::C2).verdict, Verdict::Failed);
        let c3 = v.run(ClaimId::C3);
        assert_ne!(c3.verdict, Verdict::Verified);
        assert_eq!(c3.evidence["unverified_dependencies"], serde_json::json!(["C2"]));
    }

    #[test]
    fn digest_ignores_timings() {
        let mut v = Verifier::new(small(), FamilyConstants::default());
        v.run(ClaimId::C1);
        let a = v.report();
        let mut b = a.clone();
        b.claims[0].millis += 1000;
        assert_eq!(a.digest, b.compute_digest());
        b.claims[0].verdict = Verdict::Failed;
        assert_ne!(a.digest, b.compute_digest());
    }
}
