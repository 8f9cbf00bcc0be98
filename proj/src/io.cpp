#include "kanforge/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace kanforge {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

ObjId object_named(const FinCategory& c, const std::string& name, const std::string& where) {
  auto o = c.find_object(name);
  if (!o) throw InputError(where + ": unknown object \"" + name + "\"");
  return *o;
}

MorId morphism_named(const FinCategory& c, const std::string& name, const std::string& where) {
  auto m = c.find_morphism(name);
  if (!m) throw InputError(where + ": unknown morphism \"" + name + "\"");
  return *m;
}

std::vector<char> class_from_json(const FinCategory& c, const Json& j, const char* key) {
  std::vector<char> out(c.num_morphisms(), 0);
  const std::string where = std::string("relcat.") + key;
  const Json& list = field(j, key, "relcat");
  if (!list.is_array()) throw InputError(where + ": expected an array");
  for (std::size_t i = 0; i < list.size(); ++i)
    out[morphism_named(c, str(list[i], where + "[" + std::to_string(i) + "]"), where)] = 1;
  return out;
}

Json class_to_json(const FinCategory& c, const std::vector<char>& cls) {
  Json out = Json::array();
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    if (cls[f]) out.push_back(c.morphism_name(f));
  return out;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << j.dump(2) << "\n";
}

Json category_to_json(const FinCategory& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["name"] = c.name();
  Json objs = Json::array();
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) objs.push_back(c.object_name(x));
  j["objects"] = objs;
  Json mors = Json::array();
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    mors.push_back({{"name", c.morphism_name(f)}, {"dom", c.object_name(c.dom(f))}, {"cod", c.object_name(c.cod(f))}});
  j["morphisms"] = mors;
  Json ids = Json::object();
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    ids[c.object_name(x)] = c.morphism_name(c.identity(x));
  j["identities"] = ids;
  Json comp = Json::array();
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    for (ObjId z = 0; z < static_cast<ObjId>(c.num_objects()); ++z)
      for (MorId g : c.hom(c.cod(f), z))
        comp.push_back({c.morphism_name(f), c.morphism_name(g), c.morphism_name(c.compose(g, f))});
  j["compose"] = comp;
  return j;
}

FinCategory category_from_json(const Json& j) {
  if (j.contains("schema") && j.at("schema") != kSchemaVersion)
    throw InputError("category: unsupported schema " + j.at("schema").dump());
  RawCategory raw;
  raw.name = j.contains("name") ? str(j.at("name"), "category.name") : "category";
  std::map<std::string, ObjId> obj;
  std::map<std::string, MorId> mor;
  const Json& objs = field(j, "objects", "category");
  if (!objs.is_array()) throw InputError("category.objects: expected an array");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string name = str(objs[i], "category.objects[" + std::to_string(i) + "]");
    if (!obj.emplace(name, static_cast<ObjId>(raw.objects.size())).second)
      throw InputError("category.objects[" + std::to_string(i) + "]: duplicate object \"" + name + "\"");
    raw.objects.push_back(name);
  }
  auto find_obj = [&](const std::string& name, const std::string& where) {
    auto it = obj.find(name);
    if (it == obj.end()) throw InputError(where + ": unknown object \"" + name + "\"");
    return it->second;
  };
  auto find_mor = [&](const std::string& name, const std::string& where) {
    auto it = mor.find(name);
    if (it == mor.end()) throw InputError(where + ": unknown morphism \"" + name + "\"");
    return it->second;
  };
  const Json& mors = field(j, "morphisms", "category");
  if (!mors.is_array()) throw InputError("category.morphisms: expected an array");
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const std::string where = "category.morphisms[" + std::to_string(i) + "]";
    MorphismInfo m;
    m.name = str(field(mors[i], "name", where), where + ".name");
    m.dom = find_obj(str(field(mors[i], "dom", where), where + ".dom"), where + ".dom");
    m.cod = find_obj(str(field(mors[i], "cod", where), where + ".cod"), where + ".cod");
    if (!mor.emplace(m.name, static_cast<MorId>(raw.morphisms.size())).second)
      throw InputError(where + ": duplicate morphism \"" + m.name + "\"");
    raw.morphisms.push_back(std::move(m));
  }
  raw.identity.assign(raw.objects.size(), kNone);
  const Json& ids = field(j, "identities", "category");
  if (!ids.is_object()) throw InputError("category.identities: expected an object");
  for (const auto& [name, m] : ids.items()) {
    const std::string where = "category.identities." + name;
    raw.identity[find_obj(name, where)] = find_mor(str(m, where), where);
  }
  const Json& comp = field(j, "compose", "category");
  if (!comp.is_array()) throw InputError("category.compose: expected an array");
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const std::string where = "category.compose[" + std::to_string(i) + "]";
    if (!comp[i].is_array() || comp[i].size() != 3) throw InputError(where + ": expected [f, g, gof]");
    raw.compose.push_back({find_mor(str(comp[i][0], where), where), find_mor(str(comp[i][1], where), where),
                           find_mor(str(comp[i][2], where), where)});
  }
  return validate_category(std::move(raw));
}

Json relcat_to_json(const RelStructure& r) {
  const FinCategory& c = *r.ambient;
  Json j = category_to_json(c);
  j["weq"] = class_to_json(c, r.weq);
  j["cof"] = class_to_json(c, r.cof);
  j["fib"] = class_to_json(c, r.fib);
  Json factor = Json::object();
  for (MorId w = 0; w < static_cast<MorId>(c.num_morphisms()); ++w) {
    if (!r.weq[w] || r.factor[w].cof == kNone) continue;
    factor[c.morphism_name(w)] = {{"c", c.morphism_name(r.factor[w].cof)},
                                  {"f", c.morphism_name(r.factor[w].fib)},
                                  {"mid", Json::object()}};
  }
  for (const auto& [s, m] : r.mid) {
    const std::string key = c.morphism_name(s[1]) + "|" + c.morphism_name(s[2]) + "|" + c.morphism_name(s[3]);
    factor[c.morphism_name(s[0])]["mid"][key] = c.morphism_name(m);
  }
  j["factor"] = factor;
  return j;
}

RelStructure relcat_from_json(const Json& j) {
  RelStructure r;
  r.ambient = share(category_from_json(j));
  const FinCategory& c = *r.ambient;
  r.weq = class_from_json(c, j, "weq");
  r.cof = class_from_json(c, j, "cof");
  r.fib = class_from_json(c, j, "fib");
  r.factor.assign(c.num_morphisms(), Factorization{});
  const Json& factor = field(j, "factor", "relcat");
  if (!factor.is_object()) throw InputError("relcat.factor: expected an object");
  for (const auto& [wname, entry] : factor.items()) {
    const std::string where = "relcat.factor." + wname;
    const MorId w = morphism_named(c, wname, where);
    r.factor[w].cof = morphism_named(c, str(field(entry, "c", where), where + ".c"), where + ".c");
    r.factor[w].fib = morphism_named(c, str(field(entry, "f", where), where + ".f"), where + ".f");
    if (!entry.contains("mid")) continue;
    for (const auto& [key, m] : entry.at("mid").items()) {
      const std::string kw = where + ".mid." + key;
      std::vector<std::string> parts;
      std::stringstream ss(key);
      for (std::string p; std::getline(ss, p, '|');) parts.push_back(p);
      if (parts.size() != 3) throw InputError(kw + ": key must be \"w2|u|v\"");
      const WSquare s{w, morphism_named(c, parts[0], kw), morphism_named(c, parts[1], kw),
                      morphism_named(c, parts[2], kw)};
      r.mid[s] = morphism_named(c, str(m, kw), kw);
    }
  }
  validate_structure(r);
  return r;
}

Json diagram_to_json(const Diagram& d) {
  const FinPoset& p = *d.shape();
  const FinCategory& c = *d.target();
  Json j;
  j["schema"] = kSchemaVersion;
  Json shape = Json::array(), objs = Json::object(), arrows = Json::array();
  for (int x = 0; x < p.size(); ++x) {
    shape.push_back(p.name(x));
    if (d.at(x) != kNone) objs[p.name(x)] = c.object_name(d.at(x));
  }
  for (int x = 0; x < p.size(); ++x)
    for (int y : p.strictly_above(x))
      if (d.arrow(x, y) != kNone) arrows.push_back({p.name(x), p.name(y), c.morphism_name(d.arrow(x, y))});
  j["shape"] = shape;
  j["objects"] = objs;
  j["arrows"] = arrows;
  return j;
}

Diagram diagram_from_json(const Json& j, const PosetPtr& shape, const CategoryPtr& target) {
  const FinPoset& p = *shape;
  const FinCategory& c = *target;
  Diagram d(shape, target);
  auto element = [&](const Json& v, const std::string& where) {
    const std::string name = str(v, where);
    auto x = p.find(name);
    if (!x) throw InputError(where + ": \"" + name + "\" is not an element of the shape");
    return *x;
  };
  const Json& objs = field(j, "objects", "functor");
  if (!objs.is_object()) throw InputError("functor.objects: expected an object");
  for (const auto& [name, o] : objs.items()) {
    const std::string where = "functor.objects." + name;
    const int x = element(Json(name), where);
    d.set_object(x, object_named(c, str(o, where), where));
  }
  for (int x = 0; x < p.size(); ++x) {
    if (!d.object_defined(x)) throw InputError("functor.objects: no value for \"" + p.name(x) + "\"");
    d.set_arrow(x, x, c.identity(d.at(x)));
  }
  const Json& arrows = field(j, "arrows", "functor");
  if (!arrows.is_array()) throw InputError("functor.arrows: expected an array");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const std::string where = "functor.arrows[" + std::to_string(i) + "]";
    const Json& a = arrows[i];
    if (!a.is_array() || a.size() != 3) throw InputError(where + ": expected [x, y, morphism]");
    const int x = element(a[0], where), y = element(a[1], where);
    if (!p.leq(x, y)) throw InputError(where + ": elements are not related");
    d.set_arrow(x, y, morphism_named(c, str(a[2], where), where));
  }
  if (!d.complete()) {
    for (auto [x, y] : p.covers())
      if (d.arrow(x, y) == kNone)
        throw InputError("functor.arrows: no value for \"" + p.name(x) + "\" <= \"" + p.name(y) + "\"");
    Diagram covers_only(shape, target);
    for (int x = 0; x < p.size(); ++x) {
      covers_only.set_object(x, d.at(x));
      covers_only.set_arrow(x, x, d.arrow(x, x));
    }
    for (auto [x, y] : p.covers()) covers_only.set_arrow(x, y, d.arrow(x, y));
    if (auto v = covers_only.close_from_covers()) throw InputError("functor: " + *v);
    for (int x = 0; x < p.size(); ++x)
      for (int y : p.strictly_above(x))
        if (d.arrow(x, y) != kNone && d.arrow(x, y) != covers_only.arrow(x, y))
          throw InputError("functor: given arrow " + p.name(x) + " <= " + p.name(y) + " disagrees with composites");
    d = std::move(covers_only);
  }
  if (auto v = d.violation()) throw InputError("functor: " + *v);
  return d;
}

Json functor_to_json(const Functor& f) {
  Json j;
  j["schema"] = kSchemaVersion;
  Json objs = Json::object(), mors = Json::object();
  for (ObjId x = 0; x < static_cast<ObjId>(f.source->num_objects()); ++x)
    objs[f.source->object_name(x)] = f.target->object_name(f.obj[x]);
  for (MorId m = 0; m < static_cast<MorId>(f.source->num_morphisms()); ++m)
    mors[f.source->morphism_name(m)] = f.target->morphism_name(f.mor[m]);
  j["objects"] = objs;
  j["morphisms"] = mors;
  return j;
}

}  // namespace kanforge
