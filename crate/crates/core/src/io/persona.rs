//! Persona files: a `key: value` header, a blank line, then free text.

use super::{ArtifactError, Persona};

/// Recognized header keys are `name`, `role` and `id` (case-insensitive);
/// other keys are ignored. The id defaults to the name.
pub fn parse_persona(text: &str) -> Result<Persona, ArtifactError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let (mut name, mut role, mut id) = (None, None, None);
    let mut description_start = text.len();
    let mut offset = 0;
    for (i, raw) in text.split_inclusive('\n').enumerate() {
        let line = raw.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() {
            description_start = offset + raw.len();
            break;
        }
        offset += raw.len();
        let (key, value) =
            line.split_once(':').ok_or_else(|| ArtifactError::parse(i + 1, "expected `key: value` header line"))?;
        let value = value.trim().to_string();
        match key.trim().to_lowercase().as_str() {
            "name" => name = Some(value),
            "role" => role = Some(value),
            "id" => id = Some(value),
            _ => {}
        }
    }
    let name = name.filter(|n| !n.is_empty()).ok_or(ArtifactError::MissingField("name"))?;
    let role = role.filter(|r| !r.is_empty()).ok_or(ArtifactError::MissingField("role"))?;
    let description = text[description_start..].trim_end().replace("\r\n", "\n");
    Ok(Persona { id: id.filter(|i| !i.is_empty()).unwrap_or_else(|| name.clone()), name, role, description })
}

pub fn emit_persona(persona: &Persona) -> String {
    let mut out = String::new();
    if persona.id != persona.name {
        out.push_str(&format!("id: {}\n", persona.id));
    }
    out.push_str(&format!("name: {}\nrole: {}\n\n", persona.name, persona.role));
    if !persona.description.is_empty() {
        out.push_str(&persona.description);
        out.push('\n');
    }
    out
}
