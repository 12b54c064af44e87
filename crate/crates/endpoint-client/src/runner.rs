//! The batch runner: a fixed pool of worker threads pulls probes off a
//! shared cursor, so at most `parallelism` requests are ever in flight.
//! Results land in per-index slots, which keeps the output ordered like the
//! input no matter how completions interleave.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use probe_forge::ProbeInstance;

use crate::endpoint::{ModelEndpoint, Transport};
use crate::error::ClientError;
use crate::mock::{mock_respond, MockBehavior};
use crate::record::{TrialRecord, TrialScorer};
use crate::wire;
use crate::wrapper::PromptWrapper;

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Maximum simultaneous requests (worker-thread count).
    pub parallelism: usize,
    pub timeout_ms: u64,
    /// Total attempts per trial, counting the first.
    pub attempts: u32,
    /// First retry delay; doubles per retry.
    pub backoff_ms: u64,
    /// Abort the whole run on the first trial that exhausts its attempts,
    /// instead of recording a failed trial.
    pub fail_fast: bool,
    pub bearer_token: Option<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            parallelism: 4,
            timeout_ms: 120_000,
            attempts: 3,
            backoff_ms: 500,
            fail_fast: false,
            bearer_token: None,
        }
    }
}

#[derive(Debug)]
pub struct RunOutcome {
    /// One record per probe, in probe order.
    pub trials: Vec<TrialRecord>,
    /// High-water mark of simultaneous in-flight requests (test hook).
    pub max_in_flight: usize,
    /// Trials that exhausted their attempts (always 0 under fail-fast).
    pub failed_trials: usize,
}

/// Blocking single-prompt client for HTTP endpoints, with the shared
/// retry/backoff policy. The batch runner and the agent-task harness both
/// drive completions through this.
pub struct PromptClient {
    client: reqwest::blocking::Client,
    url: String,
    model_id: String,
    endpoint_name: String,
    opts: RunOptions,
}

impl PromptClient {
    pub fn new(endpoint: &ModelEndpoint, opts: &RunOptions) -> Result<Self, ClientError> {
        if endpoint.transport != Transport::Http {
            return Err(ClientError::InvalidRoster(format!(
                "endpoint {} is not an http endpoint",
                endpoint.name
            )));
        }
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_millis(opts.timeout_ms))
            .build()
            .map_err(|e| ClientError::EndpointUnreachable {
                endpoint: endpoint.name.clone(),
                attempts: 0,
                detail: format!("client build failed: {e}"),
            })?;
        Ok(Self {
            client,
            url: wire::completions_url(&endpoint.base_url),
            model_id: endpoint.model_id.clone(),
            endpoint_name: endpoint.name.clone(),
            opts: opts.clone(),
        })
    }

    /// Sends one prompt; returns (raw text, per-call error). Transient
    /// transport failures are retried with exponential backoff; a malformed
    /// body is returned as a per-call error without retrying. A hard error
    /// comes back only under fail-fast.
    pub fn complete(
        &self,
        wrapper: PromptWrapper,
        prompt: &str,
    ) -> Result<(String, Option<String>), ClientError> {
        let body = wire::chat_body(prompt, wrapper, &self.model_id);
        let attempts = self.opts.attempts.max(1);
        let mut last_error = String::new();
        for attempt in 0..attempts {
            if attempt > 0 {
                std::thread::sleep(Duration::from_millis(self.opts.backoff_ms << (attempt - 1)));
            }
            let mut req = self.client.post(&self.url).json(&body);
            if let Some(token) = &self.opts.bearer_token {
                req = req.bearer_auth(token);
            }
            match req.send() {
                Ok(resp) => {
                    let status = resp.status();
                    let text = resp.text().unwrap_or_default();
                    if status.is_success() {
                        return match wire::parse_response(&text) {
                            Ok(content) => Ok((content, None)),
                            // Malformed bodies are not transient.
                            Err(e) => Ok((text, Some(e.to_string()))),
                        };
                    }
                    last_error = format!("http {status}");
                    if status.is_client_error() {
                        // 4xx will not improve with retries
                        break;
                    }
                }
                Err(e) => {
                    last_error = e.to_string();
                }
            }
        }
        if self.opts.fail_fast {
            return Err(ClientError::EndpointUnreachable {
                endpoint: self.endpoint_name.clone(),
                attempts,
                detail: last_error,
            });
        }
        Ok((String::new(), Some(last_error)))
    }
}

/// Runs every probe against one endpoint under one wrapper.
pub fn run_trials(
    probes: &[ProbeInstance],
    endpoint: &ModelEndpoint,
    wrapper: PromptWrapper,
    opts: &RunOptions,
    scorer: &dyn TrialScorer,
) -> Result<RunOutcome, ClientError> {
    if opts.parallelism == 0 {
        return Err(ClientError::InvalidParallelism);
    }
    endpoint.validate()?;
    let mock = match endpoint.transport {
        Transport::Mock => Some(
            endpoint
                .model_id
                .parse::<MockBehavior>()
                .map_err(|_| ClientError::InvalidMockBehavior(endpoint.model_id.clone()))?,
        ),
        Transport::Http => None,
    };
    let prompt_client = match endpoint.transport {
        Transport::Http => Some(PromptClient::new(endpoint, opts)?),
        Transport::Mock => None,
    };

    let slots: Mutex<Vec<Option<TrialRecord>>> = Mutex::new(vec![None; probes.len()]);
    let cursor = AtomicUsize::new(0);
    let in_flight = AtomicUsize::new(0);
    let high_water = AtomicUsize::new(0);
    let failed = AtomicUsize::new(0);
    let abort: Mutex<Option<ClientError>> = Mutex::new(None);
    let workers = opts.parallelism.min(probes.len().max(1));

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                if abort.lock().expect("abort lock").is_some() {
                    return;
                }
                let i = cursor.fetch_add(1, Ordering::SeqCst);
                if i >= probes.len() {
                    return;
                }
                let now = in_flight.fetch_add(1, Ordering::SeqCst) + 1;
                high_water.fetch_max(now, Ordering::SeqCst);
                let started = Instant::now();
                let result = match (mock, &prompt_client) {
                    (Some(behavior), _) => Ok((mock_respond(behavior, &probes[i]), None)),
                    (None, Some(client)) => client.complete(wrapper, &probes[i].prompt),
                    (None, None) => unreachable!("transport was validated"),
                };
                let latency = started.elapsed().as_millis() as u64;
                in_flight.fetch_sub(1, Ordering::SeqCst);
                match result {
                    Ok((raw, error)) => {
                        let (extracted, correct) = if error.is_none() {
                            scorer.score(&raw, &probes[i])
                        } else {
                            failed.fetch_add(1, Ordering::SeqCst);
                            (None, false)
                        };
                        let record = TrialRecord {
                            endpoint: endpoint.name.clone(),
                            probe_id: probes[i].id(),
                            wrapper,
                            raw_response: raw,
                            extracted,
                            correct,
                            latency_ms: latency,
                            timestamp_ms: SystemTime::now()
                                .duration_since(UNIX_EPOCH)
                                .map(|d| d.as_millis() as u64)
                                .unwrap_or(0),
                            error,
                        };
                        slots.lock().expect("slot lock")[i] = Some(record);
                    }
                    Err(e) => {
                        let mut guard = abort.lock().expect("abort lock");
                        if guard.is_none() {
                            *guard = Some(e);
                        }
                        return;
                    }
                }
            });
        }
    });

    if let Some(e) = abort.into_inner().expect("abort lock") {
        return Err(e);
    }
    let trials: Vec<TrialRecord> = slots
        .into_inner()
        .expect("slot lock")
        .into_iter()
        .map(|s| s.expect("every probe produced a record"))
        .collect();
    Ok(RunOutcome {
        trials,
        max_in_flight: high_water.load(Ordering::SeqCst),
        failed_trials: failed.load(Ordering::SeqCst),
    })
}
