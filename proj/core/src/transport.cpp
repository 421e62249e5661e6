#include "breg/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "breg/divergence.hpp"
#include "breg/parallel.hpp"

namespace breg {

Matrix bregman_cost_matrix(const ConvexGenerator& g, const DiscreteDistribution& source,
                           const DiscreteDistribution& target) {
    const int m = source.size();
    const int n = target.size();
    for (const Vector& a : source.atoms())
        if (!g.contains(a))
            throw std::domain_error("bregman_cost_matrix: source atom outside generator domain");
    for (const Vector& b : target.atoms())
        if (!g.contains(b))
            throw std::domain_error("bregman_cost_matrix: target atom outside generator domain");
    Matrix c(m, n);
    parallel_for(m, [&](std::int64_t i) {
        const Vector& x = source.atoms()[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j)
            c(static_cast<int>(i), j) =
                bregman_value(g, x, target.atoms()[static_cast<std::size_t>(j)]);
    });
    return c;
}

Matrix metric_cost_matrix(double order, const DiscreteDistribution& source,
                          const DiscreteDistribution& target) {
    if (!(order >= 1.0) || !std::isfinite(order))
        throw std::invalid_argument("metric_cost_matrix: order must be finite and >= 1");
    if (source.dimension() != target.dimension())
        throw std::invalid_argument("metric_cost_matrix: dimension mismatch");
    const int m = source.size();
    const int n = target.size();
    Matrix c(m, n);
    parallel_for(m, [&](std::int64_t i) {
        const Vector& x = source.atoms()[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const Vector& y = target.atoms()[static_cast<std::size_t>(j)];
            double s = 0.0;
            if (order == 2.0) {
                for (std::size_t k = 0; k < x.size(); ++k) {
                    const double dk = x[k] - y[k];
                    s += dk * dk;
                }
            } else {
                for (std::size_t k = 0; k < x.size(); ++k)
                    s += std::pow(std::abs(x[k] - y[k]), order);
            }
            c(static_cast<int>(i), j) = s;
        }
    });
    return c;
}

namespace {

// Spanning-tree representation of a transportation-simplex basis on the
// bipartite graph with m row nodes and n column nodes.
struct Basis {
    int m = 0, n = 0;
    std::vector<std::vector<int>> row_adj;  // row i -> basic columns
    std::vector<std::vector<int>> col_adj;  // col j -> basic rows

    void add(int i, int j) {
        row_adj[static_cast<std::size_t>(i)].push_back(j);
        col_adj[static_cast<std::size_t>(j)].push_back(i);
    }
    void remove(int i, int j) {
        auto& r = row_adj[static_cast<std::size_t>(i)];
        r.erase(std::find(r.begin(), r.end(), j));
        auto& c = col_adj[static_cast<std::size_t>(j)];
        c.erase(std::find(c.begin(), c.end(), i));
    }
};

// Duals u_i + v_j = c_ij on basic cells, rooted at u_0 = 0.
void compute_duals(const Basis& basis, const Matrix& cost, Vector& u, Vector& v) {
    const int m = basis.m, n = basis.n;
    u.assign(static_cast<std::size_t>(m), 0.0);
    v.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<char> row_done(static_cast<std::size_t>(m), 0);
    std::vector<char> col_done(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};  // node ids: rows [0,m), cols [m, m+n)
    row_done[0] = 1;
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        if (node < m) {
            for (int j : basis.row_adj[static_cast<std::size_t>(node)]) {
                if (!col_done[static_cast<std::size_t>(j)]) {
                    v[static_cast<std::size_t>(j)] =
                        cost(node, j) - u[static_cast<std::size_t>(node)];
                    col_done[static_cast<std::size_t>(j)] = 1;
                    stack.push_back(m + j);
                }
            }
        } else {
            const int j = node - m;
            for (int i : basis.col_adj[static_cast<std::size_t>(j)]) {
                if (!row_done[static_cast<std::size_t>(i)]) {
                    u[static_cast<std::size_t>(i)] =
                        cost(i, j) - v[static_cast<std::size_t>(j)];
                    row_done[static_cast<std::size_t>(i)] = 1;
                    stack.push_back(i);
                }
            }
        }
    }
}

// Unique tree path from row node i0 to column node j0 (node ids as above).
std::vector<int> tree_path(const Basis& basis, int i0, int j0) {
    const int m = basis.m, n = basis.n;
    std::vector<int> parent(static_cast<std::size_t>(m + n), -2);
    std::vector<int> queue{i0};
    parent[static_cast<std::size_t>(i0)] = -1;
    const int target = m + j0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const int node = queue[q];
        if (node == target) break;
        if (node < m) {
            for (int j : basis.row_adj[static_cast<std::size_t>(node)]) {
                if (parent[static_cast<std::size_t>(m + j)] == -2) {
                    parent[static_cast<std::size_t>(m + j)] = node;
                    queue.push_back(m + j);
                }
            }
        } else {
            for (int i : basis.col_adj[static_cast<std::size_t>(node - m)]) {
                if (parent[static_cast<std::size_t>(i)] == -2) {
                    parent[static_cast<std::size_t>(i)] = node;
                    queue.push_back(i);
                }
            }
        }
    }
    std::vector<int> path;
    for (int node = target; node != -1; node = parent[static_cast<std::size_t>(node)])
        path.push_back(node);
    std::reverse(path.begin(), path.end());  // i0 ... j0
    return path;
}

// Recomputes basic flows for given marginals by peeling tree leaves.
// With m+n-1 basic cells the system is determined; degenerate basics come
// out as (numerically) zero flows.
void flows_from_basis(const Basis& basis, const Vector& a, const Vector& b,
                      std::vector<std::vector<std::pair<int, double>>>& row_flows) {
    const int m = basis.m, n = basis.n;
    std::vector<double> rem(static_cast<std::size_t>(m + n));
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(m + n));
    for (int i = 0; i < m; ++i) {
        rem[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        for (int j : basis.row_adj[static_cast<std::size_t>(i)]) {
            adj[static_cast<std::size_t>(i)].push_back(m + j);
            adj[static_cast<std::size_t>(m + j)].push_back(i);
        }
    }
    for (int j = 0; j < n; ++j)
        rem[static_cast<std::size_t>(m + j)] = b[static_cast<std::size_t>(j)];

    std::vector<int> degree(static_cast<std::size_t>(m + n), 0);
    std::vector<int> leaves;
    for (int node = 0; node < m + n; ++node) {
        degree[static_cast<std::size_t>(node)] =
            static_cast<int>(adj[static_cast<std::size_t>(node)].size());
        if (degree[static_cast<std::size_t>(node)] == 1) leaves.push_back(node);
    }

    row_flows.assign(static_cast<std::size_t>(m), {});
    std::vector<char> removed(static_cast<std::size_t>(m + n), 0);
    while (!leaves.empty()) {
        const int leaf = leaves.back();
        leaves.pop_back();
        if (removed[static_cast<std::size_t>(leaf)]) continue;
        int other = -1;
        for (int nb : adj[static_cast<std::size_t>(leaf)]) {
            if (!removed[static_cast<std::size_t>(nb)]) {
                other = nb;
                break;
            }
        }
        if (other == -1) break;  // final node of the tree, marginals exhausted
        const double f = rem[static_cast<std::size_t>(leaf)];
        const int row = leaf < m ? leaf : other;
        const int col = (leaf < m ? other : leaf) - m;
        row_flows[static_cast<std::size_t>(row)].push_back({col, f});
        rem[static_cast<std::size_t>(other)] -= f;
        rem[static_cast<std::size_t>(leaf)] = 0.0;
        removed[static_cast<std::size_t>(leaf)] = 1;
        if (--degree[static_cast<std::size_t>(other)] == 1) leaves.push_back(other);
    }
}

}  // namespace

TransportPlan solve_exact(const Matrix& cost, const DiscreteDistribution& source,
                          const DiscreteDistribution& target) {
    const int m = source.size();
    const int n = target.size();
    if (cost.rows() != m || cost.cols() != n)
        throw std::invalid_argument("solve_exact: cost matrix shape mismatch");
    if (static_cast<long long>(m) * n > 1000000)
        throw std::invalid_argument("solve_exact: instance above the m*n <= 1e6 limit");

    // source-side perturbation against degeneracy; compensated on the last
    // target weight to stay balanced, removed again after the solve
    Vector a = source.weights();
    Vector b = target.weights();
    double bump_total = 0.0;
    for (int i = 0; i < m; ++i) {
        const double bump = static_cast<double>(i + 1) * 1e-12;
        a[static_cast<std::size_t>(i)] += bump;
        bump_total += bump;
    }
    b[static_cast<std::size_t>(n - 1)] += bump_total;

    // north-west-corner basic feasible start
    Basis basis;
    basis.m = m;
    basis.n = n;
    basis.row_adj.assign(static_cast<std::size_t>(m), {});
    basis.col_adj.assign(static_cast<std::size_t>(n), {});
    Matrix flow(m, n);
    {
        Vector ra = a, rb = b;
        int i = 0, j = 0;
        while (true) {
            const double f = std::min(ra[static_cast<std::size_t>(i)], rb[static_cast<std::size_t>(j)]);
            flow(i, j) = f;
            basis.add(i, j);
            ra[static_cast<std::size_t>(i)] -= f;
            rb[static_cast<std::size_t>(j)] -= f;
            if (i == m - 1 && j == n - 1) break;
            if (ra[static_cast<std::size_t>(i)] <= rb[static_cast<std::size_t>(j)] && i < m - 1)
                ++i;
            else if (j < n - 1)
                ++j;
            else
                ++i;
        }
    }

    Vector u, v;
    const long long max_pivots = 2000LL * (m + n) * (m + n) + 10000;
    long long pivots = 0;
    while (true) {
        compute_duals(basis, cost, u, v);

        // Bland: first cell in row-major order with negative reduced cost
        int ei = -1, ej = -1;
        for (int i = 0; i < m && ei < 0; ++i)
            for (int j = 0; j < n; ++j) {
                if (cost(i, j) - u[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)] <
                    -1e-11) {
                    ei = i;
                    ej = j;
                    break;
                }
            }
        if (ei < 0) break;

        // cycle = entering edge + tree path col ej -> row ei; flows on odd
        // path positions (starting at the entering cell as +) decrease
        std::vector<int> path = tree_path(basis, ei, ej);  // ei ... ej through the tree
        // cells along the cycle: (ei,ej) then consecutive path pairs
        double theta = std::numeric_limits<double>::infinity();
        int li = -1, lj = -1;
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            const int p0 = path[k], p1 = path[k + 1];
            const int ci = p0 < m ? p0 : p1;
            const int cj = (p0 < m ? p1 : p0) - m;
            if (k % 2 == 0) {  // first path edge shares row ei: a minus cell
                const double f = flow(ci, cj);
                // Bland on ties: lowest (i, j) among the minimizers
                if (f < theta || (f == theta && (ci < li || (ci == li && cj < lj)))) {
                    theta = f;
                    li = ci;
                    lj = cj;
                }
            }
        }
        if (li < 0) throw std::runtime_error("solve_exact: malformed pivot cycle");

        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            const int p0 = path[k], p1 = path[k + 1];
            const int ci = p0 < m ? p0 : p1;
            const int cj = (p0 < m ? p1 : p0) - m;
            flow(ci, cj) += (k % 2 == 0) ? -theta : theta;
        }
        flow(ei, ej) = theta;
        basis.remove(li, lj);
        basis.add(ei, ej);

        if (++pivots > max_pivots)
            throw std::runtime_error("solve_exact: pivot limit exceeded");
    }

    // strip the perturbation: re-solve the flows on the optimal basis with
    // the original marginals (same basis stays optimal: reduced costs do
    // not depend on the right-hand side)
    std::vector<std::vector<std::pair<int, double>>> row_flows;
    flows_from_basis(basis, source.weights(), target.weights(), row_flows);

    TransportPlan plan;
    plan.coupling = Matrix(m, n);
    double total_cost = 0.0;
    for (int i = 0; i < m; ++i) {
        for (const auto& [j, f] : row_flows[static_cast<std::size_t>(i)]) {
            double val = f;
            if (val < 0.0) {
                if (val < -1e-9)
                    throw std::runtime_error("solve_exact: negative basic flow after unperturbing");
                val = 0.0;
            }
            plan.coupling(i, j) = val;
            total_cost += val * cost(i, j);
        }
    }
    plan.cost = total_cost;
    plan.source_weights = source.weights();
    plan.target_weights = target.weights();
    plan.method = SolveMethod{SolveMethod::exact, 0.0};
    plan.dual_u = u;
    plan.dual_v = v;
    plan.converged = true;

    // optimality certificate
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (cost(i, j) - u[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)] <
                -1e-9)
                throw std::runtime_error("solve_exact: dual feasibility certificate failed");
    return plan;
}

TransportPlan solve_sinkhorn(const Matrix& cost, const DiscreteDistribution& source,
                             const DiscreteDistribution& target, double epsilon, int max_iter) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("solve_sinkhorn: epsilon must be positive");
    if (max_iter < 1) throw std::invalid_argument("solve_sinkhorn: max_iter must be >= 1");
    const int m = source.size();
    const int n = target.size();
    if (cost.rows() != m || cost.cols() != n)
        throw std::invalid_argument("solve_sinkhorn: cost matrix shape mismatch");

    Vector log_a(static_cast<std::size_t>(m)), log_b(static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i) log_a[static_cast<std::size_t>(i)] = std::log(source.weights()[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n; ++j) log_b[static_cast<std::size_t>(j)] = std::log(target.weights()[static_cast<std::size_t>(j)]);

    Vector f(static_cast<std::size_t>(m), 0.0), g(static_cast<std::size_t>(n), 0.0);
    auto lse_row = [&](int i) {
        double mx = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            mx = std::max(mx, (g[static_cast<std::size_t>(j)] - cost(i, j)) / epsilon);
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            s += std::exp((g[static_cast<std::size_t>(j)] - cost(i, j)) / epsilon - mx);
        return mx + std::log(s);
    };
    auto lse_col = [&](int j) {
        double mx = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i)
            mx = std::max(mx, (f[static_cast<std::size_t>(i)] - cost(i, j)) / epsilon);
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            s += std::exp((f[static_cast<std::size_t>(i)] - cost(i, j)) / epsilon - mx);
        return mx + std::log(s);
    };

    int it = 0;
    double violation = std::numeric_limits<double>::infinity();
    for (; it < max_iter; ++it) {
        for (int i = 0; i < m; ++i)
            f[static_cast<std::size_t>(i)] = epsilon * (log_a[static_cast<std::size_t>(i)] - lse_row(i));
        for (int j = 0; j < n; ++j)
            g[static_cast<std::size_t>(j)] = epsilon * (log_b[static_cast<std::size_t>(j)] - lse_col(j));

        // after the column update the columns match exactly; measure rows
        violation = 0.0;
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j)
                row += std::exp((f[static_cast<std::size_t>(i)] + g[static_cast<std::size_t>(j)] -
                                 cost(i, j)) /
                                epsilon);
            violation += std::abs(row - source.weights()[static_cast<std::size_t>(i)]);
        }
        if (violation <= 1e-6) {
            ++it;
            break;
        }
    }

    TransportPlan plan;
    plan.coupling = Matrix(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            plan.coupling(i, j) = std::exp(
                (f[static_cast<std::size_t>(i)] + g[static_cast<std::size_t>(j)] - cost(i, j)) /
                epsilon);

    // round onto the transportation polytope: scale the overfull rows and
    // columns down, then spread the missing mass as a rank-one term; the
    // result is an exactly feasible coupling
    {
        const Vector& a = source.weights();
        const Vector& b = target.weights();
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += plan.coupling(i, j);
            const double scale = row > a[static_cast<std::size_t>(i)]
                                     ? a[static_cast<std::size_t>(i)] / row
                                     : 1.0;
            if (scale < 1.0)
                for (int j = 0; j < n; ++j) plan.coupling(i, j) *= scale;
        }
        Vector col(static_cast<std::size_t>(n), 0.0);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < m; ++i) col[static_cast<std::size_t>(j)] += plan.coupling(i, j);
            const double scale = col[static_cast<std::size_t>(j)] > b[static_cast<std::size_t>(j)]
                                     ? b[static_cast<std::size_t>(j)] / col[static_cast<std::size_t>(j)]
                                     : 1.0;
            if (scale < 1.0) {
                for (int i = 0; i < m; ++i) plan.coupling(i, j) *= scale;
                col[static_cast<std::size_t>(j)] *= scale;
            }
        }
        Vector err_a(static_cast<std::size_t>(m), 0.0);
        Vector err_b(static_cast<std::size_t>(n), 0.0);
        double missing = 0.0;
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += plan.coupling(i, j);
            // scaling leaves at most ulp-level negative residuals
            err_a[static_cast<std::size_t>(i)] =
                std::max(0.0, a[static_cast<std::size_t>(i)] - row);
            missing += err_a[static_cast<std::size_t>(i)];
        }
        for (int j = 0; j < n; ++j)
            err_b[static_cast<std::size_t>(j)] =
                std::max(0.0, b[static_cast<std::size_t>(j)] - col[static_cast<std::size_t>(j)]);
        if (missing > 0.0) {
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j)
                    plan.coupling(i, j) += err_a[static_cast<std::size_t>(i)] *
                                           err_b[static_cast<std::size_t>(j)] / missing;
        }
    }

    double total_cost = 0.0;
    double l1 = 0.0;
    {
        Vector col_sums(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) {
                const double gamma = plan.coupling(i, j);
                total_cost += gamma * cost(i, j);
                row += gamma;
                col_sums[static_cast<std::size_t>(j)] += gamma;
            }
            l1 += std::abs(row - source.weights()[static_cast<std::size_t>(i)]);
        }
        for (int j = 0; j < n; ++j)
            l1 += std::abs(col_sums[static_cast<std::size_t>(j)] -
                           target.weights()[static_cast<std::size_t>(j)]);
    }

    plan.cost = total_cost;
    plan.source_weights = source.weights();
    plan.target_weights = target.weights();
    plan.method = SolveMethod{SolveMethod::sinkhorn, epsilon};
    plan.converged = violation <= 1e-6;
    plan.iterations = it;
    plan.marginal_error_l1 = l1;
    plan.iteration_violation_l1 = violation;
    return plan;
}

double wasserstein_p(const DiscreteDistribution& a, const DiscreteDistribution& b, double order) {
    const Matrix c = metric_cost_matrix(order, a, b);
    const TransportPlan plan = solve_exact(c, a, b);
    return std::pow(std::max(plan.cost, 0.0), 1.0 / order);
}

double wasserstein_bregman(const ConvexGenerator& g, const DiscreteDistribution& source,
                           const DiscreteDistribution& target) {
    const Matrix c = bregman_cost_matrix(g, source, target);
    return solve_exact(c, source, target).cost;
}

Decomposition decompose(const ConvexGenerator& g, const DiscreteDistribution& q,
                        const DiscreteDistribution& p_theta) {
    const DiscreteDistribution mapped =
        p_theta.pushforward([&](const Vector& y) { return g.gradient(y); });

    const double w2 = wasserstein_p(q, mapped, 2.0);
    const double d_term = 0.5 * w2 * w2;

    auto sq_norm = [](const Vector& x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return s;
    };
    const double e_q_phi = q.expectation([&](const Vector& x) { return g.value(x); });
    const double e_p_phi = p_theta.expectation([&](const Vector& y) { return g.value(y); });
    const double e_p_grad_inner =
        p_theta.expectation([&](const Vector& y) { return dot(g.gradient(y), y); });
    const double e_q_sq = q.expectation(sq_norm);
    const double e_p_grad_sq =
        p_theta.expectation([&](const Vector& y) { return sq_norm(g.gradient(y)); });

    const double p_term = e_q_phi - e_p_phi + e_p_grad_inner - 0.5 * (e_q_sq + e_p_grad_sq);
    return Decomposition{d_term, p_term, d_term + p_term};
}

}  // namespace breg
