#include "incdet/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace incdet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/** Binary min-heap over node indices with decrease-key. */
class NodeHeap {
  public:
    explicit NodeHeap(int n) : pos_(n, -1) { heap_.reserve(n); }

    bool empty() const { return heap_.empty(); }
    bool contains(int node) const { return pos_[node] >= 0; }

    void push_or_decrease(int node, double key) {
        if (pos_[node] < 0) {
            pos_[node] = static_cast<int>(heap_.size());
            heap_.push_back({key, node});
            sift_up(pos_[node]);
        } else if (key < heap_[pos_[node]].key) {
            heap_[pos_[node]].key = key;
            sift_up(pos_[node]);
        }
    }

    std::pair<int, double> pop() {
        const Entry top = heap_.front();
        pos_[top.node] = -1;
        if (heap_.size() > 1) {
            heap_.front() = heap_.back();
            pos_[heap_.front().node] = 0;
            heap_.pop_back();
            sift_down(0);
        } else {
            heap_.pop_back();
        }
        return {top.node, top.key};
    }

  private:
    struct Entry {
        double key;
        int node;
    };

    void sift_up(int i) {
        Entry e = heap_[i];
        while (i > 0) {
            int parent = (i - 1) / 2;
            if (heap_[parent].key <= e.key) break;
            heap_[i] = heap_[parent];
            pos_[heap_[i].node] = i;
            i = parent;
        }
        heap_[i] = e;
        pos_[e.node] = i;
    }

    void sift_down(int i) {
        const int n = static_cast<int>(heap_.size());
        Entry e = heap_[i];
        while (true) {
            int child = 2 * i + 1;
            if (child >= n) break;
            if (child + 1 < n && heap_[child + 1].key < heap_[child].key) ++child;
            if (heap_[child].key >= e.key) break;
            heap_[i] = heap_[child];
            pos_[heap_[i].node] = i;
            i = child;
        }
        heap_[i] = e;
        pos_[e.node] = i;
    }

    std::vector<Entry> heap_;
    std::vector<int> pos_;
};

/// Godunov update from the smaller axis neighbors a (x) and b (y).
inline double godunov_update(double a, double b, double hs) {
    const double lo = std::min(a, b), hi = std::max(a, b);
    if (hi - lo >= hs) return lo + hs;
    const double sum = a + b;
    const double disc = 2.0 * hs * hs - (a - b) * (a - b);
    return 0.5 * (sum + std::sqrt(disc));
}

FieldXd march(int nxn, int nyn, const FieldXd& speed, const std::vector<EikonalSeed>& seeds,
              double h) {
    const int n = nxn * nyn;
    FieldXd phi = FieldXd::Constant(nxn, nyn, kInf);
    std::vector<char> accepted(n, 0);
    NodeHeap heap(n);
    const auto id = [nyn](int ix, int iy) { return ix * nyn + iy; };

    for (const auto& s : seeds) {
        if (s.ix < 0 || s.ix >= nxn || s.iy < 0 || s.iy >= nyn)
            throw config_error("eikonal: seed outside the grid");
        if (!std::isfinite(s.value)) throw config_error("eikonal: seed value must be finite");
        if (s.value < phi(s.ix, s.iy)) {
            phi(s.ix, s.iy) = s.value;
            heap.push_or_decrease(id(s.ix, s.iy), s.value);
        }
    }

    const int dx[4] = {-1, 1, 0, 0};
    const int dy[4] = {0, 0, -1, 1};
    while (!heap.empty()) {
        const auto [node, key] = heap.pop();
        const int ix = node / nyn, iy = node % nyn;
        accepted[node] = 1;
        phi(ix, iy) = key;
        for (int k = 0; k < 4; ++k) {
            const int jx = ix + dx[k], jy = iy + dy[k];
            if (jx < 0 || jx >= nxn || jy < 0 || jy >= nyn) continue;
            const int j = id(jx, jy);
            if (accepted[j]) continue;
            const double a = std::min(jx > 0 ? phi(jx - 1, jy) : kInf,
                                      jx + 1 < nxn ? phi(jx + 1, jy) : kInf);
            const double b = std::min(jy > 0 ? phi(jx, jy - 1) : kInf,
                                      jy + 1 < nyn ? phi(jx, jy + 1) : kInf);
            const double hs = h / speed(jx, jy);
            double cand;
            if (std::isinf(a))
                cand = b + hs;
            else if (std::isinf(b))
                cand = a + hs;
            else
                cand = godunov_update(a, b, hs);
            if (cand < phi(jx, jy)) {
                phi(jx, jy) = cand;
                heap.push_or_decrease(j, cand);
            }
        }
    }
    return phi;
}

}  // namespace

FieldXd fast_march(const DiscreteDomain& dom, const FieldXd& speed_nodes,
                   const std::vector<EikonalSeed>& seeds) {
    if (seeds.empty()) throw config_error("eikonal: no sources");
    if (speed_nodes.rows() != dom.n_nodes_x() || speed_nodes.cols() != dom.n_nodes_y())
        throw config_error("eikonal: speed field does not match the grid");
    if ((speed_nodes <= 0.0).any() || !speed_nodes.allFinite())
        throw config_error("eikonal: invalid speed");
    return march(dom.n_nodes_x(), dom.n_nodes_y(), speed_nodes, seeds, dom.h);
}

std::vector<EikonalSeed> boundary_seeds(const DiscreteDomain& dom, const VectorXd& values) {
    if (values.size() != dom.n_boundary())
        throw config_error("eikonal: one seed value per boundary node required");
    std::vector<EikonalSeed> seeds(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b)
        seeds[b] = {dom.boundary_nodes[b].ix, dom.boundary_nodes[b].iy, values[b]};
    return seeds;
}

FieldXd extended_travel_time(const DiscreteDomain& dom, const FieldXd& speed_nodes,
                             int src_ix, int src_iy, int collar) {
    const int nxn = dom.n_nodes_x() + 2 * collar;
    const int nyn = dom.n_nodes_y() + 2 * collar;
    FieldXd speed(nxn, nyn);
    for (int ix = 0; ix < nxn; ++ix) {
        const int cx = std::clamp(ix - collar, 0, dom.nx);
        for (int iy = 0; iy < nyn; ++iy) {
            const int cy = std::clamp(iy - collar, 0, dom.ny);
            speed(ix, iy) = speed_nodes(cx, cy);
        }
    }
    std::vector<EikonalSeed> seeds{{src_ix + collar, src_iy + collar, 0.0}};
    FieldXd phi = march(nxn, nyn, speed, seeds, dom.h);
    return phi.block(collar, collar, dom.n_nodes_x(), dom.n_nodes_y());
}

}  // namespace incdet
