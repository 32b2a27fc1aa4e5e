#include <algorithm>
#include <array>
#include <cctype>
#include <fmt/format.h>
#include <regex>
#include <set>

#include "cadscript/nl.hpp"
#include "cadscript/solar.hpp"

namespace cadscript::nl {

namespace {

const std::string kNum = R"((-?\d+(?:\.\d+)?))";
const std::string kUnit = R"(((?:centimet(?:er|re)s?|cm|millimet(?:er|re)s?|mm|met(?:er|re)s?|m)\b)?)";
const std::string kSep = R"(\s*(?:x|×|by)\s*)";

constexpr double kDefaultSphereRadius = 0.5;
constexpr int kDefaultGridSide = 5;
constexpr double kDefaultFootprint = 10.0;
constexpr double kDefaultHeight = 15.0;
constexpr double kDefaultSpacing = 20.0;
constexpr std::array<double, 4> kCanopyCorners{3.0, 6.0, 6.0, 3.0};
constexpr double kCanopySpan = 10.0;
constexpr double kCanopyThickness = 0.2;

double scale_for(const std::string& unit) {
  if (unit.empty()) return 1.0;
  if (unit.rfind("c", 0) == 0) return 0.01;
  if (unit.rfind("mm", 0) == 0 || unit.rfind("milli", 0) == 0) return 0.001;
  return 1.0;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool has(const std::string& text, const std::string& pattern) { return std::regex_search(text, std::regex(pattern)); }

std::optional<std::smatch> find(const std::string& text, const std::string& pattern) {
  std::smatch m;
  if (std::regex_search(text, m, std::regex(pattern))) return m;
  return std::nullopt;
}

double number(const std::ssub_match& m) { return std::stod(m.str()); }

std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

class Translator {
 public:
  Translator(std::string_view utterance, const dsl::SceneContext& ctx, const OfflineOptions& options)
      : raw_(utterance), text_(lower(utterance)), ctx_(ctx), options_(options) {
    for (const auto& o : ctx.objects) taken_.insert(o.id);
  }

  OfflineTranslation run() {
    if (has(text_, R"(^\s*(undo|go back|revert)\b)")) {
      out_.program.statements.emplace_back(dsl::Undo{});
      return finish();
    }
    const bool refined = refine();
    box();
    sphere();
    if (!refined) hypar();
    grid();
    boolean();
    if (!refined) move();
    remove();
    bake();
    sunstudy();
    if (out_.program.statements.empty()) {
      if (missing_) {
        throw NlError(NlErrc::unsupported_phrase, fmt::format("\"{}\" needs {}, and the scene has none", raw_, *missing_));
      }
      throw NlError(NlErrc::unsupported_phrase, unsupported_message());
    }
    return finish();
  }

 private:
  OfflineTranslation finish() {
    out_.program.spans.assign(out_.program.statements.size(), dsl::Span{});
    return std::move(out_);
  }

  std::string free_name(std::string_view stem, bool numbered = true) {
    if (!numbered && !taken_.count(std::string(stem)) && !prefix_taken(stem)) {
      taken_.insert(std::string(stem));
      return std::string(stem);
    }
    for (int n = numbered ? 1 : 2;; ++n) {
      std::string id = fmt::format("{}{}", stem, n);
      if (!taken_.count(id) && !prefix_taken(id)) {
        taken_.insert(id);
        return id;
      }
    }
  }

  [[nodiscard]] bool prefix_taken(std::string_view prefix) const {
    const std::string p = std::string(prefix) + "_";
    return std::any_of(taken_.begin(), taken_.end(), [&](const std::string& id) { return id.rfind(p, 0) == 0; });
  }

  void emit(dsl::Statement st, std::optional<std::string> created = std::nullopt) {
    out_.program.statements.push_back(std::move(st));
    if (created) created_.push_back(*created);
  }

  void box() {
    if (!has(text_, R"(\b(box|cube|block)\b)")) return;
    dsl::CreateBox b;
    if (auto m = find(text_, kNum + R"(\s*)" + kUnit + kSep + kNum + R"(\s*)" + kUnit + kSep + kNum + R"(\s*)" +
                                 kUnit)) {
      const std::string last_unit = (*m)[6].str();
      for (int k = 0; k < 3; ++k) {
        const std::string unit = (*m)[2 * k + 2].matched ? (*m)[2 * k + 2].str() : last_unit;
        b.extents[static_cast<std::size_t>(k)] = number((*m)[2 * k + 1]) * scale_for(unit);
      }
    } else if (auto c = find(text_, kNum + R"(\s*)" + kUnit + R"(\s*cube\b)")) {
      const double side = number((*c)[1]) * scale_for((*c)[2].str());
      b.extents = {side, side, side};
    } else {
      b.extents = {1.0, 1.0, 1.0};
      out_.notes.emplace_back("no box size given; assumed 1×1×1 m");
    }
    box_extents_ = b.extents;
    box_id_ = free_name("b");
    b.name = box_id_;
    emit(b, box_id_);
  }

  void sphere() {
    if (!has(text_, R"(\b(sphere|ball)\b)")) return;
    dsl::CreateSphere s;
    if (auto m = find(text_, kNum + R"(\s*)" + kUnit + R"(\s*radius)")) {
      s.radius = number((*m)[1]) * scale_for((*m)[2].str());
    } else if (auto r = find(text_, R"(radius\s*(?:of\s*)?)" + kNum + R"(\s*)" + kUnit)) {
      s.radius = number((*r)[1]) * scale_for((*r)[2].str());
    } else if (auto d = find(text_, kNum + R"(\s*)" + kUnit + R"(\s*diameter)")) {
      s.radius = 0.5 * number((*d)[1]) * scale_for((*d)[2].str());
    } else {
      s.radius = kDefaultSphereRadius;
      out_.notes.emplace_back(fmt::format("no sphere radius given; assumed {} m", dsl::format_number(s.radius)));
    }
    if (box_id_ && has(text_, R"(random\s+edge)")) {
      s.placement = dsl::OnEdge{*box_id_, std::nullopt, std::nullopt, false};
      out_.notes.emplace_back("sphere centered at the midpoint of a randomly drawn box edge (session seed)");
    } else if (auto e = find(text_, R"(edge\s*(\d+))"); box_id_ && e) {
      s.placement = dsl::OnEdge{*box_id_, std::stoi((*e)[1].str()), std::nullopt, false};
    } else if (box_id_ && has(text_, R"(\b(middle|center|centre)\b)")) {
      s.placement = dsl::At{{box_extents_[0] / 2, box_extents_[1] / 2, box_extents_[2] / 2}};
    } else {
      s.placement = dsl::At{{0.0, 0.0, 0.0}};
    }
    const std::string id = free_name("s");
    s.name = id;
    emit(s, id);
  }

  void hypar() {
    if (!has(text_, R"(\b(hypar|hyperbolic|saddle|candela|canopy|paraboloid)\b)")) return;
    dsl::CreateHypar h;
    h.plan_width = kCanopySpan;
    h.plan_depth = kCanopySpan;
    h.corner_heights = kCanopyCorners;
    h.thickness = kCanopyThickness;
    const std::string id = free_name("canopy", false);
    h.name = id;
    out_.notes.emplace_back(
        "canopy defaults: 10×10 m plan, corner heights 3 6 6 3 m (saddle), shell thickness 0.2 m");
    emit(h, id);
  }

  // "make the canopy corners 2 meters higher", "lower the high corners by 50 cm"
  bool refine() {
    if (!has(text_, R"(\bcorners?\b)")) return false;
    if (auto m = find(text_, kNum + R"(\s*)" + kUnit + R"(\s*(higher|lower|up|down)\b)")) {
      const std::string dir = (*m)[3].str();
      const double sign = (dir == "lower" || dir == "down") ? -1.0 : 1.0;
      return apply_refinement(sign * number((*m)[1]) * scale_for((*m)[2].str()));
    }
    if (auto m = find(text_, R"(\b(raise|lift|lower|drop)\b.*\bby\s*)" + kNum + R"(\s*)" + kUnit)) {
      const std::string verb = (*m)[1].str();
      const double sign = (verb == "lower" || verb == "drop") ? -1.0 : 1.0;
      return apply_refinement(sign * number((*m)[2]) * scale_for((*m)[3].str()));
    }
    return false;
  }

  bool apply_refinement(double delta) {
    const dsl::ContextObject* target = nullptr;
    for (const auto& o : ctx_.objects) {
      if (o.kind == "hypar" && text_.find(lower(o.id)) != std::string::npos) target = &o;
    }
    if (!target) {
      for (const auto& o : ctx_.objects) {
        if (o.kind == "hypar") target = &o;
      }
    }
    if (!target) {
      missing_ = "a hypar canopy to refine";
      return false;
    }
    const dsl::ParseResult parsed = dsl::parse(target->detail);
    if (!parsed.ok() || parsed.program->statements.size() != 1) return false;
    const auto* prior = std::get_if<dsl::CreateHypar>(&parsed.program->statements.front());
    if (!prior) return false;

    dsl::CreateHypar h = *prior;
    const auto [lo, hi] = std::minmax_element(h.corner_heights.begin(), h.corner_heights.end());
    const double low = *lo;
    const double high = *hi;
    const bool only_high = has(text_, R"(\b(high|higher|upper|raised) corners\b)");
    const bool only_low = has(text_, R"(\b(low|lower) corners\b)");
    for (double& z : h.corner_heights) {
      const bool pick = only_high ? z == high : (only_low ? z == low : true);
      if (pick) z += delta;
    }
    h.name = target->id;
    emit(dsl::Delete{target->id});
    emit(h);
    out_.notes.emplace_back(fmt::format("rebuilt {} with corner heights {} {} {} {} m", target->id,
                                        dsl::format_number(h.corner_heights[0]),
                                        dsl::format_number(h.corner_heights[1]),
                                        dsl::format_number(h.corner_heights[2]),
                                        dsl::format_number(h.corner_heights[3])));
    return true;
  }

  void grid() {
    if (!has(text_, R"(\bgrid\b)") || !has(text_, R"(\b(buildings?|blocks|towers)\b)")) return;
    dsl::CreateGrid g;
    if (auto m = find(text_, R"((\d+)\s*(?:x|×|by)\s*(\d+)\s*grid)")) {
      g.rows = std::stoi((*m)[1].str());
      g.cols = std::stoi((*m)[2].str());
    } else {
      g.rows = g.cols = kDefaultGridSide;
      out_.notes.emplace_back("no grid size given; assumed 5×5 buildings");
    }
    if (auto m = find(text_, R"(footprints?\s*(?:of\s*)?)" + kNum + R"(\s*)" + kUnit + kSep + kNum + R"(\s*)" +
                                 kUnit)) {
      const std::string unit = (*m)[4].matched ? (*m)[4].str() : (*m)[2].str();
      g.footprint_width = number((*m)[1]) * scale_for((*m)[2].matched ? (*m)[2].str() : unit);
      g.footprint_depth = number((*m)[3]) * scale_for(unit);
    } else {
      g.footprint_width = g.footprint_depth = kDefaultFootprint;
      out_.notes.emplace_back("no footprint given; assumed 10×10 m");
    }
    if (auto m = find(text_, kNum + R"(\s*)" + kUnit + R"(\s*(?:high|tall)\b)")) {
      g.height = number((*m)[1]) * scale_for((*m)[2].str());
    } else if (auto h = find(text_, R"(height\s*(?:of\s*)?)" + kNum + R"(\s*)" + kUnit)) {
      g.height = number((*h)[1]) * scale_for((*h)[2].str());
    } else {
      g.height = kDefaultHeight;
      out_.notes.emplace_back("no building height given; assumed 15 m");
    }
    if (auto m = find(text_, R"(spaced\s*(?:at\s*)?)" + kNum + R"(\s*)" + kUnit)) {
      g.spacing = number((*m)[1]) * scale_for((*m)[2].str());
    } else if (auto a = find(text_, kNum + R"(\s*)" + kUnit + R"(\s*apart)")) {
      g.spacing = number((*a)[1]) * scale_for((*a)[2].str());
    } else {
      g.spacing = kDefaultSpacing;
      out_.notes.emplace_back("no spacing given; assumed 20 m");
    }
    out_.notes.emplace_back("spacing read as the clear gap between facades");
    const std::string prefix = free_name("bldg", false);
    g.name_prefix = prefix;
    emit(g);
  }

  void boolean() {
    std::optional<geom::BooleanKind> kind;
    if (has(text_, R"(\b(union|unite|merge|combine|join)\b)")) {
      kind = geom::BooleanKind::union_op;
    } else if (has(text_, R"(\bintersection\b|\bintersect (them|both|the two)\b)")) {
      kind = geom::BooleanKind::intersection;
    } else if (has(text_, R"(\b(subtract|difference|cut|carve)\b)")) {
      kind = geom::BooleanKind::difference;
    }
    if (!kind) return;
    std::vector<std::string> operands = created_;
    if (operands.size() < 2) {
      for (auto it = ctx_.objects.rbegin(); it != ctx_.objects.rend() && operands.size() < 2; ++it) {
        if (std::find(operands.begin(), operands.end(), it->id) == operands.end()) operands.insert(operands.begin(), it->id);
      }
    }
    if (operands.size() < 2) return;
    dsl::BooleanOp op;
    op.kind = *kind;
    op.a = operands[operands.size() - 2];
    op.b = operands[operands.size() - 1];
    const char* stem = *kind == geom::BooleanKind::union_op ? "u" : (*kind == geom::BooleanKind::intersection ? "i" : "d");
    result_id_ = free_name(stem);
    op.name = result_id_;
    emit(op, result_id_);
  }

  void move() {
    auto m = find(text_, R"(\b(move|lift|raise|shift|lower|drop)\b(?:\s+(?:the\s+)?[a-z_]\w*)?[^0-9-]*?)" + kNum + R"(\s*)" + kUnit +
                              R"(\s*(up|down|east|west|north|south)?)");
    if (!m) return;
    std::string target;
    if (!created_.empty()) {
      target = created_.back();
    } else {
      for (const auto& o : ctx_.objects) {
        if (std::regex_search(text_, std::regex("\\b" + lower(o.id) + "\\b"))) target = o.id;
      }
      if (target.empty() && !ctx_.objects.empty()) target = ctx_.objects.back().id;
    }
    if (target.empty()) {
      missing_ = "an object to move";
      return;
    }
    const double d = number((*m)[2]) * scale_for((*m)[3].str());
    const std::string verb = (*m)[1].str();
    std::string dir = (*m)[4].str();
    if (dir.empty()) dir = (verb == "lower" || verb == "drop") ? "down" : "up";
    dsl::Move mv;
    mv.target = target;
    if (dir == "up") mv.delta = {0, 0, d};
    if (dir == "down") mv.delta = {0, 0, -d};
    if (dir == "east") mv.delta = {d, 0, 0};
    if (dir == "west") mv.delta = {-d, 0, 0};
    if (dir == "north") mv.delta = {0, d, 0};
    if (dir == "south") mv.delta = {0, -d, 0};
    emit(mv);
  }

  void remove() {
    if (!has(text_, R"(\b(delete|remove)\b)")) return;
    missing_ = "an object with that name";
    for (const auto& o : ctx_.objects) {
      if (std::regex_search(text_, std::regex("\\b(delete|remove)\\s+(the\\s+)?" + lower(o.id) + "\\b"))) {
        emit(dsl::Delete{o.id});
      }
    }
  }

  void bake() {
    if (!has(text_, R"(\bbake\b)")) return;
    std::vector<std::string> named;
    for (const auto& o : ctx_.objects) {
      if (std::regex_search(text_, std::regex("\\bbake\\s+(the\\s+)?" + lower(o.id) + "\\b"))) named.push_back(o.id);
    }
    if (!named.empty()) {
      for (const auto& id : named) emit(dsl::Bake{id});
    } else if (result_id_) {
      emit(dsl::Bake{*result_id_});
    } else if (!created_.empty()) {
      for (const auto& id : created_) emit(dsl::Bake{id});
    } else if (!ctx_.objects.empty()) {
      emit(dsl::Bake{ctx_.objects.back().id});
    } else {
      missing_ = "an object to bake";
    }
  }

  void sunstudy() {
    if (!has(text_, R"(\b(sun|sunlight|solar|shade|shadows?|insolation|daylight)\b)")) return;
    dsl::SunStudy s;
    if (auto m = find(text_, R"(lat(?:itude)?\s*)" + kNum + R"(.*?lon(?:gitude)?\s*)" + kNum)) {
      s.latitude = number((*m)[1]);
      s.longitude = number((*m)[2]);
    } else if (has(text_, R"(\bequator\b)")) {
      s.latitude = 0.0;
      s.longitude = 0.0;
    } else {
      s.latitude = solar::kDerby.latitude_deg;
      s.longitude = solar::kDerby.longitude_deg;
      out_.notes.emplace_back(has(text_, R"(\b(uk|britain|england|derby)\b)")
                                  ? "location: Derby, UK (52.92 N, 1.48 W)"
                                  : "no location given; assumed Derby, UK (52.92 N, 1.48 W)");
    }
    const int year = options_.year;
    if (auto m = find(text_, R"((\d{4})-(\d{2})-(\d{2}))")) {
      s.date = CivilDate{std::stoi((*m)[1].str()), std::stoi((*m)[2].str()), std::stoi((*m)[3].str())};
    } else if (has(text_, R"(summer solstice|june solstice)")) {
      s.date = CivilDate{year, 6, 21};
      out_.notes.emplace_back(fmt::format("summer solstice taken as {}", s.date.to_string()));
    } else if (has(text_, R"(winter solstice|december solstice)")) {
      s.date = CivilDate{year, 12, 21};
      out_.notes.emplace_back(fmt::format("winter solstice taken as {}", s.date.to_string()));
    } else if (has(text_, R"((spring|vernal|march) equinox)")) {
      s.date = CivilDate{year, 3, 21};
      out_.notes.emplace_back(fmt::format("spring equinox taken as {}", s.date.to_string()));
    } else if (has(text_, R"((autumn|autumnal|fall|september) equinox)")) {
      s.date = CivilDate{year, 9, 23};
      out_.notes.emplace_back(fmt::format("autumn equinox taken as {}", s.date.to_string()));
    } else {
      s.date = CivilDate{year, 6, 21};
      out_.notes.emplace_back(fmt::format("no date given; assumed {}", s.date.to_string()));
    }
    if (auto m = find(text_, R"(every\s*(\d+)\s*min)")) {
      s.interval_min = std::stoi((*m)[1].str());
    }
    if (auto m = find(text_, kNum + R"(\s*)" + kUnit + R"(\s*cells?\b)")) {
      s.cell_m = number((*m)[1]) * scale_for((*m)[2].str());
    }
    out_.notes.emplace_back(fmt::format("sun study in UTC, {}-minute samples, {} m ground cells", s.interval_min,
                                        dsl::format_number(s.cell_m)));
    emit(s);
  }

  [[nodiscard]] std::string unsupported_message() const {
    const std::vector<std::string> mine = words(text_);
    std::vector<std::pair<double, std::string>> scored;
    for (const auto& t : offline_templates()) {
      const std::vector<std::string> theirs = words(lower(t));
      std::size_t shared = 0;
      for (const auto& w : mine) {
        if (std::find(theirs.begin(), theirs.end(), w) != theirs.end()) ++shared;
      }
      const double score = static_cast<double>(shared) / static_cast<double>(mine.size() + theirs.size() + 1);
      scored.emplace_back(-score, t);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string msg = fmt::format("no offline rule matches \"{}\"; closest supported phrasings:", raw_);
    for (std::size_t i = 0; i < 3 && i < scored.size(); ++i) msg += fmt::format("\n  - {}", scored[i].second);
    return msg;
  }

  std::string raw_;
  std::string text_;
  const dsl::SceneContext& ctx_;
  OfflineOptions options_;
  OfflineTranslation out_;
  std::set<std::string> taken_;
  std::vector<std::string> created_;
  std::optional<std::string> box_id_;
  dsl::Point3 box_extents_{};
  std::optional<std::string> result_id_;
  std::optional<std::string> missing_;  // what a recognised request lacked in the scene
};

}  // namespace

const std::vector<std::string>& offline_templates() {
  static const std::vector<std::string> templates = {
      "Create a 100x100x30 cm box",
      "Create a 2 m cube",
      "Create a box, intersected by a sphere of 30 cm radius at a random edge, and bake their union",
      "Add a sphere of 50 cm radius at edge 8 of the box",
      "Cut a sphere of 50 cm radius out of the middle of a 2 m cube",
      "Design a pavilion with a hyperbolic canopy",
      "Make the canopy corners 2 meters higher",
      "Lower the high corners by 50 cm",
      "Generate a 3x4 grid of buildings 15 meters high, spaced 20 meters apart",
      "Simulate the sunlight paths during the UK summer solstice",
      "Run a shade study at latitude 40.7 longitude -74 on 2024-12-21 every 15 minutes",
      "Move it 3 meters east",
      "Delete b1",
      "Bake u1",
      "Undo",
  };
  return templates;
}

OfflineTranslation offline_translate(std::string_view utterance, const dsl::SceneContext& context,
                                     const OfflineOptions& options) {
  return Translator(utterance, context, options).run();
}

}  // namespace cadscript::nl
