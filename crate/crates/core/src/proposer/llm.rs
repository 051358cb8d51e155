use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use super::{build_prompt, parse_response, MalformedResponse, PromptRequest, ProposerError, ProposerResponse};
use crate::slots::HeuristicConfiguration;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LlmSettings {
    /// Full URL of a chat-completions endpoint.
    pub endpoint: String,
    pub model: String,
    pub temperature: f64,
    pub max_retries: u32,
    pub request_timeout_secs: u64,
    /// Name of the environment variable holding the bearer token.
    pub api_key_env: String,
}

impl Default for LlmSettings {
    fn default() -> Self {
        LlmSettings {
            endpoint: "https://api.openai.com/v1/chat/completions".into(),
            model: "gpt-4o".into(),
            temperature: 1.0,
            max_retries: 3,
            request_timeout_secs: 300,
            api_key_env: "OPENAI_API_KEY".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

impl ChatMessage {
    pub fn user(content: impl Into<String>) -> Self {
        ChatMessage {
            role: "user".into(),
            content: content.into(),
        }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        ChatMessage {
            role: "assistant".into(),
            content: content.into(),
        }
    }
}

#[derive(Debug, Error)]
#[error("{0}")]
pub struct TransportError(pub String);

/// Sends a conversation and returns the reply text.
pub trait ChatTransport {
    fn complete(&mut self, messages: &[ChatMessage]) -> Result<String, TransportError>;
}

/// OpenAI-compatible chat completions over HTTPS.
pub struct HttpTransport {
    settings: LlmSettings,
    api_key: String,
    agent: ureq::Agent,
}

impl HttpTransport {
    /// Reads the API key from the environment variable named in `settings`.
    pub fn from_env(settings: LlmSettings) -> Result<Self, ProposerError> {
        let api_key = std::env::var(&settings.api_key_env)
            .ok()
            .filter(|k| !k.is_empty())
            .ok_or_else(|| ProposerError::MissingApiKey(settings.api_key_env.clone()))?;
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(settings.request_timeout_secs)))
            .build()
            .into();
        Ok(HttpTransport {
            settings,
            api_key,
            agent,
        })
    }
}

impl ChatTransport for HttpTransport {
    fn complete(&mut self, messages: &[ChatMessage]) -> Result<String, TransportError> {
        let body = json!({
            "model": self.settings.model,
            "temperature": self.settings.temperature,
            "messages": messages,
        });
        let reply: serde_json::Value = self
            .agent
            .post(&self.settings.endpoint)
            .header("Authorization", &format!("Bearer {}", self.api_key))
            .send_json(&body)
            .map_err(|e| TransportError(e.to_string()))?
            .body_mut()
            .read_json()
            .map_err(|e| TransportError(e.to_string()))?;
        reply["choices"][0]["message"]["content"]
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| TransportError(format!("reply has no message content: {reply}")))
    }
}

#[derive(Serialize)]
struct AuditRecord<'a> {
    attempt: u32,
    messages: &'a [ChatMessage],
    response: Option<&'a str>,
    outcome: String,
}

/// Appends every request/response pair as a JSON line.
pub struct AuditLog {
    file: File,
}

impl AuditLog {
    pub fn open(path: &Path) -> io::Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(AuditLog { file })
    }

    fn record(
        &mut self,
        attempt: u32,
        messages: &[ChatMessage],
        response: Option<&str>,
        outcome: String,
    ) {
        let rec = AuditRecord {
            attempt,
            messages,
            response,
            outcome,
        };
        let line = serde_json::to_string(&rec).expect("audit record serializes");
        if let Err(e) = writeln!(self.file, "{line}").and_then(|_| self.file.flush()) {
            log::warn!("writing prompt audit log: {e}");
        }
    }
}

fn feedback(reason: &str) -> String {
    format!(
        "Your answer could not be used: {reason}. Please answer again and follow all the tips."
    )
}

/// Asks the model for new bodies, retrying up to `max_retries` times with
/// the parse error fed back. The inner `Err` is the last malformed answer.
pub fn propose_llm(
    request: &PromptRequest,
    current: &HeuristicConfiguration,
    settings: &LlmSettings,
    transport: &mut dyn ChatTransport,
    mut audit: Option<&mut AuditLog>,
) -> Result<Result<ProposerResponse, MalformedResponse>, ProposerError> {
    let mut messages = vec![ChatMessage::user(build_prompt(request)?)];
    let mut last_malformed: Option<MalformedResponse> = None;
    let mut last_transport = String::new();
    let max_attempts = settings.max_retries + 1;

    for attempt in 1..=max_attempts {
        match transport.complete(&messages) {
            Err(e) => {
                log::warn!("proposer attempt {attempt}: {e}");
                if let Some(a) = audit.as_deref_mut() {
                    a.record(attempt, &messages, None, format!("transport error: {e}"));
                }
                last_transport = e.0;
            }
            Ok(raw) => match parse_response(&raw, &request.slots, Some(current)) {
                Ok(mut resp) => {
                    if let Some(a) = audit.as_deref_mut() {
                        a.record(attempt, &messages, Some(&raw), "ok".into());
                    }
                    resp.attempts = attempt;
                    return Ok(Ok(resp));
                }
                Err(mut m) => {
                    let reason = m.reason.to_string();
                    if let Some(a) = audit.as_deref_mut() {
                        a.record(attempt, &messages, Some(&raw), format!("malformed: {reason}"));
                    }
                    m.attempts = attempt;
                    messages.push(ChatMessage::assistant(raw));
                    messages.push(ChatMessage::user(feedback(&reason)));
                    last_malformed = Some(m);
                }
            },
        }
    }
    match last_malformed {
        Some(m) => Ok(Err(m)),
        None => Err(ProposerError::Transport {
            attempts: max_attempts,
            last: last_transport,
        }),
    }
}
