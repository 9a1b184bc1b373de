use std::time::Duration;

use super::cache::Cache;
use super::record::{normalize_label, CurveRecord};
use super::IngestError;

/// Source of raw record payloads.
pub trait Transport: Send + Sync {
    fn get(&self, label: &str) -> Result<String, IngestError>;
}

/// Fetches `<base_url>/<label>.json` over HTTP.
#[derive(Clone, Debug)]
pub struct HttpTransport {
    base_url: String,
    agent: ureq::Agent,
}

impl HttpTransport {
    pub fn new(base_url: &str, timeout: Duration) -> Self {
        let agent = ureq::AgentBuilder::new().timeout(timeout).build();
        Self { base_url: base_url.trim_end_matches('/').to_string(), agent }
    }
}

impl Transport for HttpTransport {
    fn get(&self, label: &str) -> Result<String, IngestError> {
        let url = format!("{}/{}.json", self.base_url, label);
        let resp = self.agent.get(&url).call().map_err(|e| IngestError::Network(format!("{url}: {e}")))?;
        resp.into_string().map_err(|e| IngestError::Network(format!("{url}: {e}")))
    }
}

/// Cache first, then the transport. A payload that fails validation is
/// rejected before anything is written.
pub fn fetch_remote(
    label: &str,
    transport: Option<&dyn Transport>,
    cache: &Cache,
    offline: bool,
) -> Result<CurveRecord, IngestError> {
    if let Some(r) = cache.load(label)? {
        return Ok(r);
    }
    if offline {
        return Err(IngestError::Offline(label.to_string()));
    }
    let transport = transport.ok_or_else(|| IngestError::Offline(label.to_string()))?;
    let payload = match transport.get(label) {
        Ok(p) => p,
        Err(IngestError::Network(msg)) => {
            if let Some(r) = cache.load(label)? {
                return Ok(r);
            }
            return Err(IngestError::Network(msg));
        }
        Err(e) => return Err(e),
    };
    let record = CurveRecord::from_json_str(&payload)?;
    if record.key() != normalize_label(label) {
        return Err(IngestError::Validation(format!("requested {label} but payload is {}", record.label)));
    }
    cache.store(&record)?;
    Ok(record)
}
