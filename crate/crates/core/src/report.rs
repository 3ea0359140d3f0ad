use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Advisory,
}

/// Outcome of one identity check, with a witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl IdentityCheck {
    pub fn pass(name: impl Into<String>) -> Self {
        IdentityCheck {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            detail: String::new(),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        IdentityCheck {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            detail: String::new(),
        }
    }

    /// Pass unless `witness` is set.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => IdentityCheck::pass(name),
            Some(w) => IdentityCheck::fail(name, w),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn all_passed(checks: &[IdentityCheck]) -> bool {
    checks.iter().all(IdentityCheck::passed)
}
