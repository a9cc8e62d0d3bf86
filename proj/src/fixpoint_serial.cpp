#include "ordwb/oracle.hpp"

#include <chrono>
#include <functional>

namespace ordwb {

namespace {

// Embedding search for one source set B (sorted grid indices). Elements
// below `a` are held fixed; the rest are mapped increasingly into (max F, a)
// so that <=_1 (per `prev`) and the addition triples hold in both directions.
struct Embedder {
  const Grid &g;
  const std::vector<int> &prev;
  int a;
  int src[8];
  int img[8];
  int nb = 0;

  bool rel(int x, int y) const { return x <= y && y <= prev[x]; }

  // constraints among positions 0..k that involve position k
  bool consistent(int k) const {
    for (int i = 0; i < k; ++i)
      if (rel(src[i], src[k]) != rel(img[i], img[k]))
        return false;
    for (int x = 0; x <= k; ++x)
      for (int y = 0; y <= k; ++y)
        for (int z = 0; z <= k; ++z) {
          if (x != k && y != k && z != k)
            continue;
          bool s = g.sum(src[x], src[y]) == src[z];
          bool t = g.sum(img[x], img[y]) == img[z];
          if (s != t)
            return false;
        }
    return true;
  }

  bool search(int k) {
    if (k == nb)
      return true;
    if (src[k] < a) {
      img[k] = src[k];
      return consistent(k) && search(k + 1);
    }
    int lo = k > 0 ? img[k - 1] + 1 : 0;
    // a sum x+y = src[k] inside B pins the image down
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y)
        if (g.sum(src[x], src[y]) == src[k]) {
          int c = g.sum(img[x], img[y]);
          if (c < lo || c >= a)
            return false;
          img[k] = c;
          return consistent(k) && search(k + 1);
        }
    for (int c = lo; c < a; ++c) {
      img[k] = c;
      if (consistent(k) && search(k + 1))
        return true;
    }
    return false;
  }
};

// Does some B = S + {q}, S drawn from `pool` with |B| <= cap, fail to embed?
bool has_failure(const Grid &g, const std::vector<int> &prev, int a, int q,
                 const std::vector<int> &pool, int cap, std::vector<int> *witness = nullptr) {
  Embedder e{g, prev, a, {}, {}, 0};
  int pick[8];
  // subsets by increasing size so cheap refutations are found first
  for (int size = 0; size < cap; ++size) {
    if (size > (int)pool.size())
      break;
    for (int i = 0; i < size; ++i)
      pick[i] = i;
    while (true) {
      e.nb = size + 1;
      for (int i = 0; i < size; ++i)
        e.src[i] = pool[pick[i]];
      e.src[size] = q;
      if (!e.search(0)) {
        if (witness)
          witness->assign(e.src, e.src + e.nb);
        return true;
      }
      int i = size - 1;
      while (i >= 0 && pick[i] == (int)pool.size() - size + i)
        --i;
      if (i < 0)
        break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j)
        pick[j] = pick[j - 1] + 1;
    }
  }
  return false;
}

} // namespace

int fixpoint_row(const Grid &g, const std::vector<int> &prev, int a, int subset_cap,
                 std::vector<int> *witness) {
  if (subset_cap < 2 || subset_cap > 8)
    throw DomainError("subset cap must lie in [2, 8]");
  std::vector<int> pool;
  auto [sb, sp] = g.split(a);
  for (int i = 0; i < a; ++i)
    if (g.is_param(i) || i == sb || i == sp)
      pool.push_back(i);
  for (int q = a; q < prev[a]; ++q) {
    if (has_failure(g, prev, a, q, pool, subset_cap, witness))
      return q;
    pool.push_back(q);
  }
  return prev[a];
}

std::size_t prune_transitive(std::vector<int> &mh) {
  std::size_t removed = 0;
  for (int a = (int)mh.size() - 1; a >= 0; --a)
    for (int j = a + 1; j <= mh[a]; ++j)
      if (mh[j] > mh[a]) {
        removed += mh[a] - (j - 1);
        mh[a] = j - 1;
        j = a;
      }
  return removed;
}

Leq1Relation leq1_fixpoint_serial(std::shared_ptr<const Grid> g, int subset_cap) {
  auto t0 = std::chrono::steady_clock::now();
  int n = (int)g->size();
  std::vector<int> cur(n, n - 1), next(n);
  FixpointStats st;
  while (true) {
    std::size_t removed = 0;
    for (int a = 0; a < n; ++a) {
      next[a] = fixpoint_row(*g, cur, a, subset_cap);
      removed += cur[a] - next[a];
    }
    removed += prune_transitive(next);
    ++st.rounds;
    st.removed_per_round.push_back(removed);
    if (removed == 0)
      break;
    cur.swap(next);
  }
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return Leq1Relation(std::move(g), std::move(cur), subset_cap, st);
}

std::vector<std::vector<bool>> leq1_naive(const Grid &g, int subset_cap) {
  int n = (int)g.size();
  std::vector<std::vector<bool>> R(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      R[i][j] = true;

  auto embeds = [&](const std::vector<std::vector<bool>> &rel, int a, const std::vector<int> &B) {
    std::vector<int> movers;
    for (int b : B)
      if (b >= a)
        movers.push_back(b);
    int fixed_max = -1;
    for (int b : B)
      if (b < a)
        fixed_max = b;
    // every increasing tuple in (fixed_max, a)
    std::vector<int> h(movers.size());
    std::function<bool(std::size_t, int)> rec = [&](std::size_t k, int lo) -> bool {
      if (k == movers.size()) {
        auto img = [&](int x) {
          for (std::size_t i = 0; i < movers.size(); ++i)
            if (movers[i] == x)
              return h[i];
          return x;
        };
        for (int x : B)
          for (int y : B) {
            if (x < y && rel[x][y] != rel[img(x)][img(y)])
              return false;
            for (int z : B)
              if ((g.sum(x, y) == z) != (g.sum(img(x), img(y)) == img(z)))
                return false;
          }
        return true;
      }
      for (int c = lo; c < a; ++c) {
        h[k] = c;
        if (rec(k + 1, c + 1))
          return true;
      }
      return false;
    };
    return rec(0, fixed_max + 1);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    auto next = R;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (!R[a][b])
          continue;
        // all B inside grid∩b: fixed part from parameters below a
        std::vector<int> cand;
        auto [sb, sp] = g.split(a);
        for (int i = 0; i < b; ++i)
          if (i >= a || g.is_param(i) || i == sb || i == sp)
            cand.push_back(i);
        bool ok = true;
        int m = (int)cand.size();
        std::vector<int> B;
        std::function<void(int)> enumerate = [&](int from) {
          if (!ok)
            return;
          bool has_mover = !B.empty() && B.back() >= a;
          if (has_mover && !embeds(R, a, B))
            ok = false;
          if ((int)B.size() == subset_cap)
            return;
          for (int i = from; i < m && ok; ++i) {
            B.push_back(cand[i]);
            enumerate(i + 1);
            B.pop_back();
          }
        };
        enumerate(0);
        if (!ok) {
          next[a][b] = false;
          changed = true;
        }
      }
    // a <=_1 j and j <=_1 k without a <=_1 k: drop (a, j) and all above it
    for (int a = n - 1; a >= 0; --a)
      for (int j = a + 1; j < n; ++j) {
        if (!next[a][j])
          continue;
        bool bad = false;
        for (int k = j + 1; k < n && !bad; ++k)
          bad = next[j][k] && !next[a][k];
        if (bad) {
          for (int k = j; k < n; ++k)
            next[a][k] = false;
          changed = true;
          j = a; // earlier members may now reach past the cut
        }
      }
    R.swap(next);
  }
  return R;
}

Leq1Relation::Leq1Relation(std::shared_ptr<const Grid> g, std::vector<int> mhat, int subset_cap,
                           FixpointStats stats)
    : grid_(std::move(g)), mhat_(std::move(mhat)), cap_(subset_cap), stats_(std::move(stats)) {
  if (mhat_.size() != grid_->size())
    throw DomainError("relation size does not match grid");
}

bool Leq1Relation::leq1(const Term &a, const Term &b) const {
  return leq1(grid_->require(a), grid_->require(b));
}

Term Leq1Relation::m_hat(const Term &t) const { return (*grid_)[mhat_[grid_->require(t)]]; }

std::size_t Leq1Relation::pair_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < mhat_.size(); ++i)
    c += mhat_[i] - i + 1;
  return c;
}

std::vector<ClassMember> class_detect(const Leq1Relation &rel, int j) {
  if (j < 1)
    throw DomainError("class level must be >= 1");
  const Grid &g = rel.grid();
  int n = (int)g.size();
  // witness[k][a]: next chain element above a for a chain of length k+1, -2 if none
  std::vector<std::vector<int>> next(j, std::vector<int>(n, -2));
  for (int a = 0; a < n; ++a) {
    auto d = g.index_of(mul(g[a], Term::nat(2)));
    if (d && *d > a && rel.leq1(a, *d))
      next[0][a] = -1;
  }
  for (int k = 1; k < j; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b <= rel.mhat()[a]; ++b)
        if (next[k - 1][b] != -2) {
          next[k][a] = b;
          break;
        }
  std::vector<ClassMember> out;
  for (int a = 0; a < n; ++a) {
    if (next[j - 1][a] == -2)
      continue;
    ClassMember m{g[a], {}};
    int cur = a;
    for (int k = j - 1; k >= 0; --k) {
      m.chain.push_back(g[cur]);
      cur = next[k][cur];
    }
    out.push_back(std::move(m));
  }
  return out;
}

RelationCheck check_relation(const Leq1Relation &rel) {
  RelationCheck r;
  const auto &mh = rel.mhat();
  const Grid &g = rel.grid();
  int n = (int)mh.size();
  for (int i = 0; i < n && r.ok(); ++i) {
    if (mh[i] < i) {
      r.reflexive = false;
      r.first_violation = "not reflexive at " + render(g[i]);
    } else if (mh[i] >= n) {
      r.in_order = false;
      r.first_violation = "row out of range at " + render(g[i]);
    }
    for (int j = i; j <= mh[i] && r.ok(); ++j)
      if (mh[j] > mh[i]) {
        r.transitive = false;
        r.first_violation = render(g[i]) + " <=_1 " + render(g[j]) + " <=_1 " +
                            render(g[mh[j]]) + " but not " + render(g[i]) + " <=_1 " +
                            render(g[mh[j]]);
      }
  }
  return r;
}

} // namespace ordwb
