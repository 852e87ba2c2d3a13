// Copyright 2026 The posform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <map>
#include <string>

#include "posform/classical.hpp"
#include "posform/dsl.hpp"
#include "posform/quantum.hpp"

namespace posform::dsl {

namespace {

enum class Backend { Quantum, Classical, Generic };

constexpr std::size_t kMaxTensorEntries = std::size_t{1} << 22;

/// A declaration that failed earlier poisons everything that refers to it.
struct DependencyError {
  std::string message;
};

Eigen::MatrixXcd to_matrix(const Value& v, const char* what) {
  auto entry = [](const Value& e) -> std::complex<double> {
    if (e.kind == Value::Kind::Number) return e.number;
    if (e.kind == Value::Kind::Complex) return e.complex;
    throw Error(Errc::InvalidArgument, "matrix entries must be numbers");
  };
  if (v.kind != Value::Kind::List || v.items.empty()) {
    throw Error(Errc::InvalidArgument, std::string(what) + " must be a non-empty list of rows");
  }
  const auto rows = static_cast<Eigen::Index>(v.items.size());
  const auto& first = v.items.front();
  if (first.kind != Value::Kind::List || first.items.empty()) {
    throw Error(Errc::InvalidArgument, std::string(what) + " rows must be non-empty lists");
  }
  const auto cols = static_cast<Eigen::Index>(first.items.size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = v.items[static_cast<std::size_t>(i)];
    if (row.kind != Value::Kind::List || static_cast<Eigen::Index>(row.items.size()) != cols) {
      throw Error(Errc::DimensionMismatch, std::string(what) + " is not rectangular");
    }
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = entry(row.items[static_cast<std::size_t>(j)]);
  }
  return m;
}

Eigen::VectorXcd to_complex_vector(const Value& v) {
  if (v.kind != Value::Kind::List || v.items.empty()) {
    throw Error(Errc::InvalidArgument, "expected a non-empty list of amplitudes");
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.items.size()));
  for (std::size_t i = 0; i < v.items.size(); ++i) {
    const auto& e = v.items[i];
    if (e.kind == Value::Kind::Number) {
      out(static_cast<Eigen::Index>(i)) = e.number;
    } else if (e.kind == Value::Kind::Complex) {
      out(static_cast<Eigen::Index>(i)) = e.complex;
    } else {
      throw Error(Errc::InvalidArgument, "amplitudes must be numbers");
    }
  }
  return out;
}

void flatten(const Value& v, std::vector<double>& out) {
  if (v.kind == Value::Kind::Number) {
    out.push_back(v.number);
  } else if (v.kind == Value::Kind::List) {
    for (const auto& item : v.items) flatten(item, out);
  } else {
    throw Error(Errc::InvalidArgument, "expected real numbers");
  }
}

Eigen::VectorXd to_real_vector(const Value& v) {
  std::vector<double> flat;
  flatten(v, flat);
  return Eigen::Map<const Eigen::VectorXd>(flat.data(), static_cast<Eigen::Index>(flat.size()));
}

bool truth(const Value& v) { return v.kind == Value::Kind::Ident && v.ident == "true"; }

class Evaluator {
 public:
  explicit Evaluator(const EvalOptions& opts) : opts_(opts) {}

  std::vector<QueryRecord> run(const SpecAst& ast) {
    std::vector<QueryRecord> records;
    for (const auto& d : ast.declarations) {
      if (d.kind == DeclKind::Query) {
        records.push_back(query(d));
        continue;
      }
      try {
        declare(d);
      } catch (const Error& e) {
        failed_[d.name] = e.what();
      } catch (const DependencyError& e) {
        failed_[d.name] = e.message;
      } catch (const std::exception& e) {
        failed_[d.name] = std::string("malformed declaration: ") + e.what();
      }
    }
    return records;
  }

 private:
  template <class Map>
  const typename Map::mapped_type& get(const Map& m, const std::string& name) const {
    if (auto it = m.find(name); it != m.end()) return it->second;
    if (auto f = failed_.find(name); f != failed_.end()) {
      throw DependencyError{"'" + name + "' failed: " + f->second};
    }
    throw Error(Errc::InvalidArgument, "unknown name '" + name + "'");
  }

  const Value& field(const Declaration& d, const char* key) const {
    const Field* f = d.find(key);
    if (!f) throw Error(Errc::InvalidArgument, std::string("missing field '") + key + "'");
    return f->value;
  }

  void declare(const Declaration& d) {
    switch (d.kind) {
      case DeclKind::Space: space(d); break;
      case DeclKind::Atom: {
        const auto& s = get(spaces_, field(d, "space").ident);
        atoms_[d.name] = cx_.make_atom(d.name, s.id);
        break;
      }
      case DeclKind::Region: region(d); break;
      case DeclKind::Glue: {
        const RegionId l = get(regions_, field(d, "left").ident);
        const RegionId r = get(regions_, field(d, "right").ident);
        auto res = cx_.glue(l, r);
        regions_[d.name] = res.region;
        break;
      }
      case DeclKind::Probe: probes_.insert_or_assign(d.name, probe(d)); break;
      case DeclKind::Bc: bcs_.insert_or_assign(d.name, bc(d)); break;
      case DeclKind::Query: break;
    }
  }

  void space(const Declaration& d) {
    const std::string& backend = field(d, "backend").ident;
    const Field* label = d.find("label");
    std::string name = label && label->value.kind == Value::Kind::Ident ? label->value.ident : d.name;
    if (backend == "quantum") {
      const auto n = static_cast<std::size_t>(field(d, "n").number);
      BoundarySpaceSpec spec = quantum::qm_space(n);
      spec.label = name;
      spaces_[d.name] = {cx_.add_space(std::move(spec)), Backend::Quantum};
    } else if (backend == "classical") {
      std::vector<std::string> states;
      for (const auto& s : field(d, "states").items) states.push_back(s.ident);
      spaces_[d.name] = {cx_.add_space(classical::stat_space(classical::StateSet(std::move(states)), name)),
                         Backend::Classical};
    } else {
      const Eigen::MatrixXcd g = to_matrix(field(d, "gram"), "gram");
      const Eigen::MatrixXd gram = g.real();
      ConeSpec cone = ConeSpec::orthant();
      if (const Field* c = d.find("cone"); c && c->value.ident == "generators") {
        std::vector<Eigen::VectorXd> gens;
        for (const auto& item : field(d, "generators").items) gens.push_back(to_real_vector(item));
        cone = ConeSpec::generators(std::move(gens));
      }
      spaces_[d.name] = {cx_.add_space(BoundarySpaceSpec(static_cast<std::size_t>(gram.rows()),
                                                         std::move(cone), SlicePairing(gram), name)),
                         Backend::Generic};
    }
  }

  void region(const Declaration& d) {
    if (const Field* s = d.find("slice")) {
      const RegionId r = cx_.slice(get(atoms_, s->value.ident));
      regions_[d.name] = r;
      atoms_[field(d, "mirror").ident] = cx_.region(r).boundary[1];
      return;
    }
    std::vector<AtomId> boundary;
    for (const auto& a : field(d, "atoms").items) boundary.push_back(get(atoms_, a.ident));
    regions_[d.name] = cx_.make_region(d.name, std::move(boundary));
  }

  Backend backend_of(AtomId a) const {
    const SpaceId s = cx_.atom(a).space;
    for (const auto& [name, info] : spaces_)
      if (info.id == s) return info.backend;
    return Backend::Generic;
  }

  bool all_backend(const Region& r, Backend b) const {
    if (r.boundary.empty()) return false;
    for (AtomId a : r.boundary)
      if (backend_of(a) != b) return false;
    return true;
  }

  Probe probe(const Declaration& d) {
    const RegionId rid = get(regions_, field(d, "region").ident);
    const Region& r = cx_.region(rid);
    std::size_t entries = 1;
    for (AtomId a : r.boundary) {
      entries *= cx_.space_of(a).dim;
      if (entries > kMaxTensorEntries) {
        throw Error(Errc::InvalidArgument, "probe on region '" + r.label + "' would exceed " +
                                               std::to_string(kMaxTensorEntries) + " tensor entries");
      }
    }
    Probe p;
    if (const Field* f = d.find("kraus")) {
      std::vector<Eigen::MatrixXcd> ops;
      if (f->value.kind != Value::Kind::List) throw Error(Errc::InvalidArgument, "kraus must be a list of matrices");
      for (const auto& m : f->value.items) ops.push_back(to_matrix(m, "Kraus operator"));
      p = quantum::probe_from_kraus(cx_, rid, quantum::KrausSet(std::move(ops)));
    } else if (const Field* f = d.find("unitary")) {
      p = quantum::null_probe_qm(cx_, rid, to_matrix(f->value, "unitary"));
    } else if (const Field* f = d.find("effect")) {
      p = quantum::effect_probe(cx_, rid, to_matrix(f->value, "effect"));
    } else if (const Field* f = d.find("observable")) {
      p = quantum::observable_probe(cx_, rid, to_matrix(f->value, "observable"));
    } else if (const Field* f = d.find("null")) {
      if (!truth(f->value)) throw Error(Errc::InvalidArgument, "null must be true when given");
      if (r.kind == RegionKind::Slice) {
        p = slice_null_probe(cx_, rid);
      } else if (all_backend(r, Backend::Quantum)) {
        p = quantum::null_probe_qm(cx_, rid);
      } else if (all_backend(r, Backend::Classical)) {
        p = classical::permissive_probe(cx_, rid);
      } else {
        throw Error(Errc::InvalidArgument, "region '" + r.label + "' has no canonical null-probe");
      }
    } else if (const Field* f = d.find("kernel")) {
      std::vector<double> flat;
      flatten(f->value, flat);
      p = classical::stat_probe(cx_, rid, kernel_map(r, flat), primitive_flag(d, true));
    } else if (const Field* f = d.find("tensor")) {
      std::vector<double> flat;
      flatten(f->value, flat);
      std::vector<std::size_t> shape;
      for (AtomId a : r.boundary) shape.push_back(cx_.space_of(a).dim);
      p = make_probe(cx_, rid, Tensor(std::move(shape), std::move(flat)), primitive_flag(d, false));
    } else if (const Field* f = d.find("compose")) {
      const Gluing* g = cx_.gluing_of(rid);
      if (!g) throw Error(Errc::RegionMismatch, "compose needs a region declared by glue");
      const Probe& a = get(probes_, f->value.items.at(0).ident);
      const Probe& b = get(probes_, f->value.items.at(1).ident);
      p = compose(cx_, a, b, *g);
    } else {
      throw Error(Errc::InvalidArgument, "probe has no payload");
    }
    if (const Field* f = d.find("primitive")) p.primitive = truth(f->value);
    return p;
  }

  bool primitive_flag(const Declaration& d, bool fallback) const {
    const Field* f = d.find("primitive");
    return f ? truth(f->value) : fallback;
  }

  classical::Kernel kernel_map(const Region& r, const std::vector<double>& flat) const {
    std::vector<const std::vector<std::string>*> states;
    std::size_t total = 1;
    for (AtomId a : r.boundary) {
      states.push_back(&classical::states_of(cx_, cx_.atom(a).space));
      total *= states.back()->size();
    }
    if (flat.size() != total) {
      throw Error(Errc::MissingKernelEntry, "kernel has " + std::to_string(flat.size()) +
                                                " entries, the boundary has " + std::to_string(total) +
                                                " state tuples");
    }
    classical::Kernel k;
    std::vector<std::size_t> idx(states.size(), 0);
    for (std::size_t flat_i = 0; flat_i < total; ++flat_i) {
      classical::BoundaryStates key;
      for (std::size_t i = 0; i < idx.size(); ++i) key.push_back((*states[i])[idx[i]]);
      k.emplace(std::move(key), flat[flat_i]);
      for (std::size_t a = idx.size(); a-- > 0;) {
        if (++idx[a] < states[a]->size()) break;
        idx[a] = 0;
      }
    }
    return k;
  }

  struct BcInfo {
    AtomId atom;
    BCVector vec;
  };

  BcInfo bc(const Declaration& d) {
    const AtomId atom = get(atoms_, field(d, "atom").ident);
    const SpaceId sid = cx_.atom(atom).space;
    if (const Field* f = d.find("matrix")) {
      return {atom, quantum::state_bc(cx_, sid, to_matrix(f->value, "matrix")).bc};
    }
    if (const Field* f = d.find("ket")) {
      return {atom, quantum::state_bc(cx_, sid, quantum::pure_state(to_complex_vector(f->value))).bc};
    }
    if (const Field* f = d.find("state")) {
      return {atom, classical::indicator(cx_, sid, f->value.ident)};
    }
    const Field* f = d.find("weights");
    if (!f) f = d.find("coords");
    if (!f) throw Error(Errc::InvalidArgument, "boundary condition has no payload");
    Eigen::VectorXd c = to_real_vector(f->value);
    if (static_cast<std::size_t>(c.size()) != cx_.space(sid).dim) {
      throw Error(Errc::DimensionMismatch, "'" + d.name + "' has " + std::to_string(c.size()) +
                                               " entries, space dimension is " +
                                               std::to_string(cx_.space(sid).dim));
    }
    return {atom, BCVector(sid, std::move(c))};
  }

  BoundaryAssignment assignment(const Value& names) const {
    BoundaryAssignment b;
    for (const auto& n : names.items) {
      const BcInfo& info = get(bcs_, n.ident);
      if (!b.emplace(info.atom, info.vec).second) {
        throw Error(Errc::InvalidArgument, "two boundary conditions for atom '" +
                                               cx_.atom(info.atom).label + "'");
      }
    }
    return b;
  }

  QueryRecord query(const Declaration& d) {
    QueryRecord rec;
    rec.name = d.name;
    const Field* kind = d.find("kind");
    rec.kind = kind ? kind->value.ident : "";
    try {
      const Probe& p = get(probes_, field(d, "probe").ident);
      const BoundaryAssignment b = assignment(field(d, "bc"));
      QueryResult r;
      if (rec.kind == "value") {
        r.numerator = evaluate(p, b);
        r.denominator = 1.0;
        r.quotient = r.numerator;
      } else if (rec.kind == "cond_prob") {
        r = cond_prob_probe(cx_, p, get(probes_, field(d, "given").ident), b, opts_.query);
      } else if (rec.kind == "bc_prob") {
        r = cond_prob_boundary(cx_, p, b, assignment(field(d, "given")), opts_.query);
      } else if (rec.kind == "expectation") {
        r = expectation(p, get(probes_, field(d, "given").ident), b, opts_.query);
      } else {
        throw Error(Errc::InvalidArgument, "unknown query kind '" + rec.kind + "'");
      }
      rec.numerator = r.numerator;
      rec.denominator = r.denominator;
      rec.quotient = r.quotient;
      rec.diagnostics = std::move(r.diagnostics);
    } catch (const ZeroDenominatorError& e) {
      rec.numerator = e.numerator();
      rec.denominator = e.denominator();
      rec.error = e.what();
    } catch (const Error& e) {
      rec.error = e.what();
    } catch (const DependencyError& e) {
      rec.error = e.message;
    } catch (const std::out_of_range& e) {
      rec.error = std::string("malformed query: ") + e.what();
    }
    return rec;
  }

  struct SpaceInfo {
    SpaceId id;
    Backend backend;
  };

  EvalOptions opts_;
  Complex cx_;
  std::map<std::string, SpaceInfo> spaces_;
  std::map<std::string, AtomId> atoms_;
  std::map<std::string, RegionId> regions_;
  std::map<std::string, Probe> probes_;
  std::map<std::string, BcInfo> bcs_;
  std::map<std::string, std::string> failed_;
};

}  // namespace

std::vector<QueryRecord> eval_spec(const SpecAst& ast, const EvalOptions& opts) {
  return Evaluator(opts).run(ast);
}

}  // namespace posform::dsl
