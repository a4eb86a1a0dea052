use super::*;

#[test]
fn determinants() {
    assert_eq!(det(&vec![vec![2, 1], [1, 1].to_vec()]), 1);
    assert_eq!(det(&vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
    assert_eq!(det(&vec![vec![1, 2], vec![2, 4]]), 0);
    assert_eq!(det(&vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]), 6);
    assert_eq!(det(&vec![vec![0, 2, 1], vec![1, 3, 2], vec![1, 1, 2]]), -2);
}

#[test]
fn inverse_of_unimodular() {
    let a = vec![vec![2, 1, 0], vec![1, 1, 0], vec![3, 0, 1]];
    let inv = inverse(&a).unwrap();
    assert_eq!(mul(&a, &inv), identity(3));
    assert!(inverse(&vec![vec![2, 0], vec![0, 1]]).is_none());
}

#[test]
fn kernel_and_saturation() {
    let a = vec![vec![1, 2, 3]];
    let k = integer_kernel(&a, 3);
    assert_eq!(cols(&k), 2);
    for j in 0..2 {
        let v: IVec = (0..3).map(|i| k[i][j]).collect();
        assert_eq!(dot(&a[0], &v), 0);
    }
    // span of (2,0,0),(0,2,2) saturates to span of e1 and (0,1,1)
    let s = saturated_span(&[vec![2, 0, 0], vec![0, 2, 2]], 3);
    assert_eq!(cols(&s), 2);
    let mut m = transpose(&s);
    m.push(vec![0, 0, 1]);
    assert_eq!(det(&m).abs(), 1);
}

#[test]
fn completion_to_basis() {
    for v in [
        vec![3, 5],
        vec![0, 0, 1],
        vec![-1, -1, -1, -1],
        vec![2, 3, 5, 7],
        vec![1, 0, 0],
    ] {
        let m = complete_to_last(&v).unwrap();
        assert!(is_unimodular(&m));
        let mut e = vec![0; v.len()];
        *e.last_mut().unwrap() = 1;
        assert_eq!(mul_vec(&m, &v), e);
    }
    assert!(complete_to_last(&[2, 4]).is_none());
}

#[test]
fn pairing_one() {
    for a in [vec![3, 5], vec![-2, 7, 4], vec![0, 0, -1]] {
        let x = solve_pairing_one(&a).unwrap();
        assert_eq!(dot(&a, &x), 1);
    }
}

#[test]
fn divisors() {
    assert_eq!(elementary_divisors(&vec![vec![0, 4], vec![0, 0]]), vec![4]);
    assert_eq!(
        elementary_divisors(&vec![vec![2, 0], vec![0, 6]]),
        vec![2, 6]
    );
    assert_eq!(
        elementary_divisors(&vec![vec![2, 4], vec![-1, -2]]),
        vec![1]
    );
}

#[test]
fn left_solve() {
    // X P = Q with X = [[1,2],[3,4]]
    let p = to_q(&vec![vec![1, 0, 1], vec![0, 1, 1]]);
    let q = to_q(&vec![vec![1, 2, 3], vec![3, 4, 7]]);
    let x = solve_left(&p, &q).unwrap();
    assert_eq!(from_q(&x).unwrap(), vec![vec![1, 2], vec![3, 4]]);
    let bad = to_q(&vec![vec![1, 2, 4], vec![3, 4, 7]]);
    assert!(solve_left(&p, &bad).is_none());
}
