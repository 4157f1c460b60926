use std::future::IntoFuture;

use mersq_api::{InstanceSpec, SearchRequest, SolveRequest, VerifyRequest};
use mersq_client::{ApiClient, ClientError};
use mersq_core::solver::{EquationInstance, classify};
use mersq_core::oracle::{SearchBounds, brute_force};

async fn spawn_server() -> ApiClient {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", 0))
        .await
        .expect("bind loopback");
    let addr = listener.local_addr().unwrap();
    tokio::spawn(axum::serve(listener, mersq_service::router()).into_future());
    ApiClient::new(format!("http://{addr}"))
}

#[tokio::test]
async fn solve_round_trips_to_library_result() {
    let client = spawn_server().await;
    client.health().await.unwrap();

    let over_wire = client
        .solve(&SolveRequest {
            instance: InstanceSpec::from_exponents(13, 3, 3),
            positive_only: false,
        })
        .await
        .unwrap();
    let local = classify(
        &EquationInstance::from_exponents(13, 3, 3).unwrap(),
        false,
    );
    assert_eq!(over_wire, local);
}

#[tokio::test]
async fn search_round_trips_to_library_result() {
    let client = spawn_server().await;
    let over_wire = client
        .search(&SearchRequest {
            instance: InstanceSpec::from_exponents(13, 3, 3),
            x_max: 6,
            y_max: 6,
            z_max: None,
        })
        .await
        .unwrap();
    let local = brute_force(
        &EquationInstance::from_exponents(13, 3, 3).unwrap(),
        &SearchBounds::new(6, 6),
    );
    assert_eq!(over_wire, local);
}

#[tokio::test]
async fn verify_and_tables() {
    let client = spawn_server().await;

    let resp = client
        .verify(&VerifyRequest {
            instance: InstanceSpec::from_exponents(13, 3, 3),
            x: 2,
            y: 5,
            z: "2731".into(),
        })
        .await
        .unwrap();
    assert!(resp.holds);

    let rows = client.table1(7).await.unwrap();
    assert_eq!(rows, mersq_core::catalog::table1(7).unwrap());
    let rows = client.table2().await.unwrap();
    assert_eq!(rows, mersq_core::catalog::table2());
    let rows = client.solvable(13).await.unwrap();
    assert_eq!(rows, mersq_core::catalog::enumerate_solvable(13).unwrap());

    let report = client.mersenne_report(13).await.unwrap();
    assert_eq!(report.value, "8191");
    let list = client.mersenne_list(31).await.unwrap();
    assert_eq!(list.len(), 8);
}

#[tokio::test]
async fn api_errors_surface_with_codes() {
    let client = spawn_server().await;

    let err = client
        .solve(&SolveRequest {
            instance: InstanceSpec::from_exponents(4, 3, 3),
            positive_only: false,
        })
        .await
        .unwrap_err();
    match err {
        ClientError::Api { status, code, .. } => {
            assert_eq!(status, 400);
            assert_eq!(code, "invalid_input");
        }
        other => panic!("expected Api error, got {other:?}"),
    }

    let err = client.mersenne_report(89).await.unwrap_err();
    match err {
        ClientError::Api { status, code, .. } => {
            assert_eq!(status, 422);
            assert_eq!(code, "cap_exceeded");
        }
        other => panic!("expected Api error, got {other:?}"),
    }
}
