//! Exact wire format.
//!
//! Request: `POST {base_url}/v1/chat/completions` with body
//!
//! ```json
//! {"model": "...", "messages": [{"role": "...", "content": "..."}, ...],
//!  "temperature": 0.0, "top_p": 1.0, "stream": false}
//! ```
//!
//! `temperature` 0 plus `top_p` 1 pins greedy decoding. Responses must carry
//! `choices[0].message.content`; anything else is a malformed response and is
//! recorded on the trial rather than aborting the run. An
//! `Authorization: Bearer <token>` header is attached when a token is
//! configured.

use probe_forge::ProbeInstance;
use serde::{Deserialize, Serialize};

use crate::error::ClientError;
use crate::wrapper::PromptWrapper;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

impl ChatMessage {
    pub fn system(content: &str) -> Self {
        Self { role: "system".to_string(), content: content.to_string() }
    }

    pub fn user(content: &str) -> Self {
        Self { role: "user".to_string(), content: content.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub messages: Vec<ChatMessage>,
    pub temperature: f64,
    pub top_p: f64,
    pub stream: bool,
}

/// Builds the exact request body for one prompt under one wrapper.
pub fn chat_body(prompt: &str, wrapper: PromptWrapper, model_id: &str) -> ChatRequest {
    ChatRequest {
        model: model_id.to_string(),
        messages: wrapper.messages(prompt),
        temperature: 0.0,
        top_p: 1.0,
        stream: false,
    }
}

/// Builds the exact request body for one probe under one wrapper.
pub fn render_request(probe: &ProbeInstance, wrapper: PromptWrapper, model_id: &str) -> ChatRequest {
    chat_body(&probe.prompt, wrapper, model_id)
}

#[derive(Debug, Deserialize)]
struct ChatResponse {
    choices: Vec<Choice>,
}

#[derive(Debug, Deserialize)]
struct Choice {
    message: ResponseMessage,
}

#[derive(Debug, Deserialize)]
struct ResponseMessage {
    content: String,
}

/// Pulls the assistant text out of a response body.
pub fn parse_response(body: &str) -> Result<String, ClientError> {
    let parsed: ChatResponse = serde_json::from_str(body)
        .map_err(|e| ClientError::MalformedResponse(format!("not a chat response: {e}")))?;
    parsed
        .choices
        .into_iter()
        .next()
        .map(|c| c.message.content)
        .ok_or_else(|| ClientError::MalformedResponse("response has no choices".to_string()))
}

pub fn completions_url(base_url: &str) -> String {
    format!("{}/v1/chat/completions", base_url.trim_end_matches('/'))
}

#[cfg(test)]
mod tests {
    use super::*;
    use probe_forge::{ParaphraseTemplate, ProbeKind, ProbeSpec, SurfaceForm};

    fn probe() -> ProbeInstance {
        let spec = ProbeSpec::new(
            ProbeKind::WmfAm,
            3,
            SurfaceForm::Points,
            ParaphraseTemplate::Original,
            0,
            0,
        );
        ProbeInstance::arithmetic(spec, "Alice", 10, &[5, -3, 7]).unwrap()
    }

    #[test]
    fn bare_request_is_a_single_user_message() {
        let req = render_request(&probe(), PromptWrapper::Bare, "test-model");
        assert_eq!(req.messages.len(), 1);
        assert_eq!(req.messages[0].role, "user");
        assert_eq!(req.messages[0].content, probe().prompt);
        assert_eq!(req.temperature, 0.0);
        assert_eq!(req.top_p, 1.0);
        assert!(!req.stream);
    }

    #[test]
    fn chat_request_prepends_the_fixed_system_message() {
        let req = render_request(&probe(), PromptWrapper::Chat, "test-model");
        assert_eq!(req.messages.len(), 2);
        assert_eq!(req.messages[0].role, "system");
        assert_eq!(req.messages[0].content, crate::CHAT_SYSTEM_MESSAGE);
        assert_eq!(req.messages[1].content, probe().prompt);
    }

    #[test]
    fn cot_request_appends_the_instruction() {
        let req = render_request(&probe(), PromptWrapper::CoT, "test-model");
        assert_eq!(req.messages.len(), 1);
        assert!(req.messages[0].content.starts_with(&probe().prompt));
        assert!(req.messages[0].content.ends_with(crate::COT_INSTRUCTION));
    }

    #[test]
    fn request_body_field_names_are_pinned() {
        let req = render_request(&probe(), PromptWrapper::Bare, "m");
        let json = serde_json::to_string(&req).unwrap();
        let positions: Vec<usize> = ["\"model\"", "\"messages\"", "\"temperature\":0.0", "\"top_p\":1.0", "\"stream\":false"]
            .iter()
            .map(|k| json.find(k).unwrap_or_else(|| panic!("{k} missing from {json}")))
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "field order drifted: {json}");
    }

    #[test]
    fn parses_chat_completion_bodies() {
        let body = r#"{"choices":[{"message":{"role":"assistant","content":"19"}}]}"#;
        assert_eq!(parse_response(body).unwrap(), "19");
        assert!(parse_response("{}").is_err());
        assert!(parse_response("no json").is_err());
    }

    #[test]
    fn url_join_handles_trailing_slash() {
        assert_eq!(
            completions_url("http://localhost:11434/"),
            "http://localhost:11434/v1/chat/completions"
        );
    }
}
