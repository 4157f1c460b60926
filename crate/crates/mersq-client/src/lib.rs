//! Typed async client for the mersq API.

use serde::Serialize;
use serde::de::DeserializeOwned;

use mersq_api::{self as api, ErrorBody, routes};
use mersq_core::SolutionSet;
use mersq_core::catalog::CatalogRow;

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    /// The service answered with its error envelope.
    #[error("{code}: {message}")]
    Api {
        status: u16,
        code: String,
        message: String,
    },
    #[error(transparent)]
    Transport(#[from] reqwest::Error),
}

pub type Result<T> = std::result::Result<T, ClientError>;

#[derive(Debug, Clone)]
pub struct ApiClient {
    base: String,
    http: reqwest::Client,
}

impl ApiClient {
    /// `base_url` like `http://127.0.0.1:8080`.
    pub fn new(base_url: impl Into<String>) -> Self {
        let mut base = base_url.into();
        while base.ends_with('/') {
            base.pop();
        }
        Self {
            base,
            http: reqwest::Client::new(),
        }
    }

    pub fn base_url(&self) -> &str {
        &self.base
    }

    pub async fn health(&self) -> Result<()> {
        let resp = self
            .http
            .get(format!("{}{}", self.base, routes::HEALTH))
            .send()
            .await?;
        decode_unit(resp).await
    }

    pub async fn solve(&self, req: &api::SolveRequest) -> Result<SolutionSet> {
        self.post(routes::SOLVE, req).await
    }

    pub async fn verify(&self, req: &api::VerifyRequest) -> Result<api::VerifyResponse> {
        self.post(routes::VERIFY, req).await
    }

    pub async fn search(&self, req: &api::SearchRequest) -> Result<SolutionSet> {
        self.post(routes::SEARCH, req).await
    }

    pub async fn table1(&self, p_limit: u32) -> Result<Vec<CatalogRow>> {
        self.get(&format!("{}?p_limit={p_limit}", routes::TABLE1))
            .await
    }

    pub async fn table2(&self) -> Result<Vec<CatalogRow>> {
        self.get(routes::TABLE2).await
    }

    pub async fn solvable(&self, p_limit: u32) -> Result<Vec<CatalogRow>> {
        self.get(&format!("{}?p_limit={p_limit}", routes::SOLVABLE))
            .await
    }

    pub async fn mersenne_report(&self, p: u32) -> Result<api::MersenneReport> {
        self.get(&format!("{}/{p}", routes::MERSENNE)).await
    }

    pub async fn mersenne_list(&self, p_limit: u32) -> Result<Vec<api::MersenneExponentRow>> {
        self.get(&format!("{}?p_limit={p_limit}", routes::MERSENNE))
            .await
    }

    async fn post<Req: Serialize, Resp: DeserializeOwned>(
        &self,
        path: &str,
        req: &Req,
    ) -> Result<Resp> {
        let resp = self
            .http
            .post(format!("{}{path}", self.base))
            .json(req)
            .send()
            .await?;
        decode(resp).await
    }

    async fn get<Resp: DeserializeOwned>(&self, path_and_query: &str) -> Result<Resp> {
        let resp = self
            .http
            .get(format!("{}{path_and_query}", self.base))
            .send()
            .await?;
        decode(resp).await
    }
}

async fn decode<Resp: DeserializeOwned>(resp: reqwest::Response) -> Result<Resp> {
    let status = resp.status();
    if status.is_success() {
        return Ok(resp.json().await?);
    }
    Err(envelope_error(status.as_u16(), &resp.bytes().await?))
}

async fn decode_unit(resp: reqwest::Response) -> Result<()> {
    let status = resp.status();
    if status.is_success() {
        return Ok(());
    }
    Err(envelope_error(status.as_u16(), &resp.bytes().await?))
}

fn envelope_error(status: u16, body: &[u8]) -> ClientError {
    match serde_json::from_slice::<ErrorBody>(body) {
        Ok(envelope) => ClientError::Api {
            status,
            code: envelope.error.code,
            message: envelope.error.message,
        },
        Err(_) => ClientError::Api {
            status,
            code: api::codes::INTERNAL.to_string(),
            message: String::from_utf8_lossy(body).into_owned(),
        },
    }
}
