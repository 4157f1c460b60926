//! Axum router for the mersq API. All state lives in the request; every
//! handler is a pure function of its input, so the router is `Clone` and
//! safe under any concurrency.

use axum::extract::{Path, Query};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;

use mersq_api::{self as api, ErrorBody, RequestError, codes, routes};
use mersq_core::catalog::{self, CatalogRow};
use mersq_core::oracle;
use mersq_core::solver::classify;
use mersq_core::SolutionSet;

pub fn router() -> Router {
    Router::new()
        .route(routes::HEALTH, get(health))
        .route(routes::SOLVE, post(solve))
        .route(routes::VERIFY, post(verify))
        .route(routes::SEARCH, post(search))
        .route(routes::TABLE1, get(table1))
        .route(routes::TABLE2, get(table2))
        .route(routes::SOLVABLE, get(solvable))
        .route(routes::MERSENNE, get(mersenne_list))
        .route(&format!("{}/{{p}}", routes::MERSENNE), get(mersenne_report))
}

struct Failure {
    status: StatusCode,
    body: ErrorBody,
}

impl IntoResponse for Failure {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

impl From<RequestError> for Failure {
    fn from(e: RequestError) -> Self {
        let status = match e.code() {
            codes::CAP_EXCEEDED => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        Failure {
            status,
            body: ErrorBody::new(e.code(), e.to_string()),
        }
    }
}

impl From<mersq_core::Error> for Failure {
    fn from(e: mersq_core::Error) -> Self {
        RequestError::from(e).into()
    }
}

type ApiResult<T> = Result<Json<T>, Failure>;

async fn health() -> &'static str {
    "ok"
}

async fn solve(Json(req): Json<api::SolveRequest>) -> ApiResult<SolutionSet> {
    let instance = req.instance.resolve()?;
    Ok(Json(classify(&instance, req.positive_only)))
}

async fn verify(Json(req): Json<api::VerifyRequest>) -> ApiResult<api::VerifyResponse> {
    let instance = req.instance.resolve()?;
    let z = mersq_core::serde_util::parse_biguint(&req.z)
        .map_err(RequestError::Shape)
        .map_err(Failure::from)?;
    let lhs = instance.mp().value().pow(req.x) + instance.mq_plus_one().pow(req.y);
    let root = instance.l() * &z;
    let rhs = &root * &root;
    Ok(Json(api::VerifyResponse {
        holds: oracle::verify(&instance, req.x, req.y, &z),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }))
}

async fn search(Json(req): Json<api::SearchRequest>) -> ApiResult<SolutionSet> {
    let instance = req.instance.resolve()?;
    let bounds = req.bounds()?;
    // sweeps can be sizeable; keep them off the async workers
    let set = tokio::task::spawn_blocking(move || oracle::brute_force(&instance, &bounds))
        .await
        .map_err(|e| Failure {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            body: ErrorBody::new(codes::INTERNAL, e.to_string()),
        })?;
    Ok(Json(set))
}

#[derive(Deserialize)]
struct TableParams {
    #[serde(default = "default_p_limit")]
    p_limit: u32,
}

fn default_p_limit() -> u32 {
    7
}

async fn table1(Query(params): Query<TableParams>) -> ApiResult<Vec<CatalogRow>> {
    Ok(Json(catalog::table1(params.p_limit)?))
}

async fn table2() -> Json<Vec<CatalogRow>> {
    Json(catalog::table2())
}

async fn solvable(Query(params): Query<TableParams>) -> ApiResult<Vec<CatalogRow>> {
    Ok(Json(catalog::enumerate_solvable(params.p_limit)?))
}

#[derive(Deserialize)]
struct MersenneListParams {
    p_limit: u32,
}

async fn mersenne_list(
    Query(params): Query<MersenneListParams>,
) -> Json<Vec<api::MersenneExponentRow>> {
    Json(api::MersenneExponentRow::list(params.p_limit))
}

async fn mersenne_report(Path(p): Path<u32>) -> ApiResult<api::MersenneReport> {
    Ok(Json(api::MersenneReport::build(p)?))
}
