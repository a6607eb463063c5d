//! Property sourcing: a batched remote client (JSON contract, retries with
//! backoff, canonical-SMILES cache) and local surrogate estimates for the
//! two indexes computable offline.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gates::PropertyMap;
use crate::policy::{P_LOGP, P_SAS};

/// Wire contract: request `{"smiles": [...]}`, response
/// `{"results": [{"smiles": ..., "properties": {name: value}}]}`.
#[derive(Debug, Deserialize)]
struct WireResponse {
    results: Vec<WireResult>,
}

#[derive(Debug, Deserialize)]
struct WireResult {
    smiles: String,
    properties: BTreeMap<String, f64>,
}

/// How a property request reaches the remote service. Swappable so tests
/// run against a scripted stub and campaigns can record which transport ran.
pub trait AdmetTransport {
    /// POST one batch; returns the raw response body.
    fn post_batch(&mut self, request_json: &str) -> Result<String>;
}

/// Blocking HTTP transport for a configured endpoint.
pub struct HttpTransport {
    endpoint: String,
    auth_token: Option<String>,
    client: reqwest::blocking::Client,
}

impl HttpTransport {
    pub fn new(endpoint: impl Into<String>, auth_token: Option<String>) -> Result<HttpTransport> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(30))
            .build()
            .map_err(|e| Error::Timeout {
                detail: e.to_string(),
            })?;
        Ok(HttpTransport {
            endpoint: endpoint.into(),
            auth_token,
            client,
        })
    }
}

impl AdmetTransport for HttpTransport {
    fn post_batch(&mut self, request_json: &str) -> Result<String> {
        let mut request = self
            .client
            .post(&self.endpoint)
            .header("content-type", "application/json")
            .body(request_json.to_string());
        if let Some(token) = &self.auth_token {
            request = request.bearer_auth(token);
        }
        let response = request.send().map_err(|e| {
            if e.is_timeout() {
                Error::Timeout {
                    detail: e.to_string(),
                }
            } else {
                Error::MalformedResponse {
                    detail: e.to_string(),
                }
            }
        })?;
        response.text().map_err(|e| Error::MalformedResponse {
            detail: e.to_string(),
        })
    }
}

/// Outcome of one batched lookup: per-structure properties for the
/// successes plus the names of anything the service skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmetBatch {
    pub properties: BTreeMap<String, PropertyMap>,
    pub failed: Vec<String>,
}

impl AdmetBatch {
    /// Collapse a partial batch into an error naming the failures.
    pub fn require_complete(self) -> Result<BTreeMap<String, PropertyMap>> {
        if self.failed.is_empty() {
            Ok(self.properties)
        } else {
            Err(Error::PartialBatch {
                failed: self.failed,
            })
        }
    }
}

/// Batched, cached, retrying client over any transport.
pub struct AdmetClient<T: AdmetTransport> {
    transport: T,
    cache: BTreeMap<String, PropertyMap>,
    retries: usize,
    backoff: Duration,
    cache_hits: usize,
    requests_sent: usize,
}

impl<T: AdmetTransport> AdmetClient<T> {
    pub fn new(transport: T, retries: usize, backoff: Duration) -> AdmetClient<T> {
        AdmetClient {
            transport,
            cache: BTreeMap::new(),
            retries,
            backoff,
            cache_hits: 0,
            requests_sent: 0,
        }
    }

    pub fn cache_hits(&self) -> usize {
        self.cache_hits
    }

    pub fn requests_sent(&self) -> usize {
        self.requests_sent
    }

    /// Fetch properties for a batch of canonical SMILES. Cached structures
    /// never travel; the remainder goes out as one request, retried with
    /// exponential backoff on transport failure. Structures the service
    /// omits are reported in `failed` (the successes stay usable).
    pub fn fetch_batch(&mut self, smiles: &[String]) -> Result<AdmetBatch> {
        let mut properties = BTreeMap::new();
        let mut wanted = Vec::new();
        for s in smiles {
            if let Some(hit) = self.cache.get(s) {
                self.cache_hits += 1;
                properties.insert(s.clone(), hit.clone());
            } else if !wanted.contains(s) {
                wanted.push(s.clone());
            }
        }
        if wanted.is_empty() {
            return Ok(AdmetBatch {
                properties,
                failed: Vec::new(),
            });
        }

        let request = serde_json::json!({ "smiles": wanted }).to_string();
        let mut last_error = None;
        let mut body = None;
        for attempt in 0..=self.retries {
            self.requests_sent += 1;
            match self.transport.post_batch(&request) {
                Ok(text) => {
                    body = Some(text);
                    break;
                }
                Err(e) => {
                    last_error = Some(e);
                    if attempt < self.retries {
                        std::thread::sleep(self.backoff * 2u32.saturating_pow(attempt as u32));
                    }
                }
            }
        }
        let body = match body {
            Some(b) => b,
            None => return Err(last_error.expect("retry loop ran at least once")),
        };

        let parsed: WireResponse =
            serde_json::from_str(&body).map_err(|e| Error::MalformedResponse {
                detail: e.to_string(),
            })?;
        for result in parsed.results {
            if result.properties.values().any(|v| !v.is_finite()) {
                return Err(Error::MalformedResponse {
                    detail: format!("non-finite property for `{}`", result.smiles),
                });
            }
            self.cache.insert(result.smiles.clone(), result.properties);
        }

        let mut failed = Vec::new();
        for s in &wanted {
            match self.cache.get(s) {
                Some(props) => {
                    properties.insert(s.clone(), props.clone());
                }
                None => failed.push(s.clone()),
            }
        }
        Ok(AdmetBatch { properties, failed })
    }
}

/// Offline surrogate properties: the two indexes computable from structure
/// alone. Everything else stays absent, so a full-policy gate reports it
/// missing unless the policy is narrowed to these.
pub fn local_surrogates(molecule: &molgraph::Molecule) -> PropertyMap {
    PropertyMap::from([
        (P_LOGP.to_string(), molgraph::logp_estimate(molecule).value),
        (P_SAS.to_string(), molgraph::sas_estimate(molecule).value),
    ])
}
