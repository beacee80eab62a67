#include "rcplan/cube.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace rcplan {
namespace {

// Axis coordinates: component 0 along U/D, 1 along R/L, 2 along F/B.
// Positive direction is U, R, F respectively.
struct Vec3 {
    int v[3];
    friend bool operator==(const Vec3& a, const Vec3& b) {
        return a.v[0] == b.v[0] && a.v[1] == b.v[1] && a.v[2] == b.v[2];
    }
};

constexpr std::array<Vec3, kNumCorners> kCornerPos = {{
    {{+1, -1, -1}},  // cube1 ULB
    {{+1, -1, +1}},  // cube2 ULF
    {{-1, -1, -1}},  // cube3 DLB
    {{-1, -1, +1}},  // cube4 DLF
    {{+1, +1, +1}},  // cube5 URF
    {{+1, +1, -1}},  // cube6 URB
    {{-1, +1, +1}},  // cube7 DRF
    {{-1, +1, -1}},  // cube8 DRB
}};

constexpr std::array<Vec3, kNumEdges> kEdgePos = {{
    {{+1, -1, 0}},   // edge12 UL
    {{0, -1, -1}},   // edge13 BL
    {{0, -1, +1}},   // edge24 FL
    {{-1, -1, 0}},   // edge34 DL
    {{+1, 0, -1}},   // edge16 UB
    {{+1, 0, +1}},   // edge25 UF
    {{-1, 0, -1}},   // edge38 DB
    {{-1, 0, +1}},   // edge47 DF
    {{+1, +1, 0}},   // edge56 UR
    {{0, +1, +1}},   // edge57 FR
    {{0, +1, -1}},   // edge68 BR
    {{-1, +1, 0}},   // edge78 DR
}};

const std::array<std::string, kNumCorners> kCornerNames = {
    "cube1", "cube2", "cube3", "cube4", "cube5", "cube6", "cube7", "cube8"};

const std::array<std::string, kNumEdges> kEdgeNames = {
    "edge12", "edge13", "edge24", "edge34", "edge16", "edge25",
    "edge38", "edge47", "edge56", "edge57", "edge68", "edge78"};

// Axis and sign of each face's outward normal.
constexpr int kFaceAxis[kNumFaces] = {0, 0, 1, 1, 2, 2};   // U,D,L,R,F,B
constexpr int kFaceSign[kNumFaces] = {+1, -1, -1, +1, +1, -1};

constexpr Color kFaceColor[kNumFaces] = {Color::Red,   Color::Orange, Color::Blue,
                                         Color::Green, Color::White,  Color::Yellow};

Face face_of(int axis, int sign) {
    for (int f = 0; f < kNumFaces; ++f)
        if (kFaceAxis[f] == axis && kFaceSign[f] == sign) return static_cast<Face>(f);
    throw std::logic_error("face_of: bad axis/sign");
}

// One clockwise quarter turn of `f` (viewed from outside) applied to a
// position vector.
Vec3 rotate_cw(Face f, const Vec3& p) {
    Vec3 r = p;
    switch (f) {
        case Face::U: r.v[1] = -p.v[2]; r.v[2] = p.v[1]; break;
        case Face::D: r.v[1] = p.v[2]; r.v[2] = -p.v[1]; break;
        case Face::R: r.v[0] = p.v[2]; r.v[2] = -p.v[0]; break;
        case Face::L: r.v[0] = -p.v[2]; r.v[2] = p.v[0]; break;
        case Face::F: r.v[1] = p.v[0]; r.v[0] = -p.v[1]; break;
        case Face::B: r.v[1] = -p.v[0]; r.v[0] = p.v[1]; break;
    }
    return r;
}

int sigma(Face f, int axis) {
    auto [a, b] = std::pair<int, int>{0, 0};
    int fa = kFaceAxis[static_cast<int>(f)];
    a = (fa + 1) % 3;
    b = (fa + 2) % 3;
    if (axis == a) return b;
    if (axis == b) return a;
    return axis;
}

int perm_sign3(int a, int b, int c) {
    // +1 for even permutations of (0,1,2)
    int inv = (a > b) + (a > c) + (b > c);
    return (inv % 2 == 0) ? +1 : -1;
}

struct Geometry {
    // Clockwise sticker-axis cycle per corner slot, starting at the U/D axis.
    std::array<std::array<int, 3>, kNumCorners> corner_axes;
    // Reference axis order per edge slot (first entry is the orientation
    // reference sticker).
    std::array<std::array<int, 2>, kNumEdges> edge_axes;
    std::array<MoveTable, kNumMoves> tables;
    std::map<std::array<Color, 3>, int> corner_by_colors;  // sorted color triple
    std::map<std::array<Color, 2>, int> edge_by_colors;    // sorted color pair

    Geometry() {
        for (int i = 0; i < kNumCorners; ++i) {
            const Vec3& p = kCornerPos[i];
            // order (0,x,y) such that sign product * permutation sign is +1,
            // which is "clockwise viewed from outside the corner"
            int s0 = p.v[0];
            for (auto [a, b] : {std::pair{1, 2}, std::pair{2, 1}}) {
                if (s0 * p.v[a] * p.v[b] * perm_sign3(0, a, b) == +1) {
                    corner_axes[i] = {0, a, b};
                    break;
                }
            }
        }
        for (int i = 0; i < kNumEdges; ++i) {
            const Vec3& p = kEdgePos[i];
            if (p.v[0] != 0 && p.v[1] != 0)
                edge_axes[i] = {0, 1};  // U/D layer, R/L side
            else if (p.v[2] != 0 && p.v[1] != 0)
                edge_axes[i] = {2, 1};  // middle layer
            else
                edge_axes[i] = {0, 2};  // U/D layer, F/B side
        }

        for (int f = 0; f < kNumFaces; ++f) {
            Face face = static_cast<Face>(f);
            MoveTable cw = quarter_cw_table(face);
            MoveTable cw2 = compose(cw, cw);
            tables[f * 3 + 0] = cw;
            tables[f * 3 + 1] = compose(cw2, cw);
            tables[f * 3 + 2] = cw2;
        }

        for (int i = 0; i < kNumCorners; ++i) {
            auto c = corner_solved_colors(i);
            std::sort(c.begin(), c.end());
            corner_by_colors[c] = i;
        }
        for (int i = 0; i < kNumEdges; ++i) {
            auto c = edge_solved_colors(i);
            std::sort(c.begin(), c.end());
            edge_by_colors[c] = i;
        }
    }

    static int corner_at(const Vec3& p) {
        for (int i = 0; i < kNumCorners; ++i)
            if (kCornerPos[i] == p) return i;
        throw std::logic_error("corner_at: not a corner position");
    }

    static int edge_at(const Vec3& p) {
        for (int i = 0; i < kNumEdges; ++i)
            if (kEdgePos[i] == p) return i;
        throw std::logic_error("edge_at: not an edge position");
    }

    static bool on_face(const Vec3& p, Face f) {
        int fa = kFaceAxis[static_cast<int>(f)];
        return p.v[fa] == kFaceSign[static_cast<int>(f)];
    }

    MoveTable quarter_cw_table(Face f) const {
        MoveTable t;
        for (int i = 0; i < kNumCorners; ++i) { t.cp[i] = i; t.co[i] = 0; }
        for (int i = 0; i < kNumEdges; ++i) { t.ep[i] = i; t.eo[i] = 0; }
        for (int i = 0; i < kNumCorners; ++i) {
            if (!on_face(kCornerPos[i], f)) continue;
            int j = corner_at(rotate_cw(f, kCornerPos[i]));
            t.cp[j] = i;
            // the sticker on the slot-i reference axis lands on sigma(axis)
            int landed = sigma(f, corner_axes[i][0]);
            int d = 0;
            while (corner_axes[j][d] != landed) ++d;
            t.co[j] = static_cast<uint8_t>(d);
        }
        for (int i = 0; i < kNumEdges; ++i) {
            if (!on_face(kEdgePos[i], f)) continue;
            int j = edge_at(rotate_cw(f, kEdgePos[i]));
            t.ep[j] = i;
            t.eo[j] = sigma(f, edge_axes[i][0]) == edge_axes[j][0] ? 0 : 1;
        }
        return t;
    }

    // Effect of m1 followed by m2.
    static MoveTable compose(const MoveTable& m1, const MoveTable& m2) {
        MoveTable r;
        for (int i = 0; i < kNumCorners; ++i) {
            r.cp[i] = m1.cp[m2.cp[i]];
            r.co[i] = static_cast<uint8_t>((m1.co[m2.cp[i]] + m2.co[i]) % 3);
        }
        for (int i = 0; i < kNumEdges; ++i) {
            r.ep[i] = m1.ep[m2.ep[i]];
            r.eo[i] = m1.eo[m2.ep[i]] ^ m2.eo[i];
        }
        return r;
    }

    std::array<Color, 3> corner_solved_colors(int slot) const {
        std::array<Color, 3> c;
        for (int k = 0; k < 3; ++k) {
            int a = corner_axes[slot][k];
            c[k] = kFaceColor[static_cast<int>(face_of(a, kCornerPos[slot].v[a]))];
        }
        return c;
    }

    std::array<Color, 2> edge_solved_colors(int slot) const {
        std::array<Color, 2> c;
        for (int k = 0; k < 2; ++k) {
            int a = edge_axes[slot][k];
            c[k] = kFaceColor[static_cast<int>(face_of(a, kEdgePos[slot].v[a]))];
        }
        return c;
    }
};

const Geometry& geom() {
    static const Geometry g;
    return g;
}

// Net layout per face: normal, row direction, column direction (axis coords).
struct FaceFrame {
    Vec3 row, col;
};

// Net face order U,L,F,R,B,D.
constexpr Face kNetFaces[kNumFaces] = {Face::U, Face::L, Face::F, Face::R, Face::B, Face::D};
constexpr int kNetPos[kNumFaces] = {0, 5, 1, 3, 2, 4};  // indexed by Face enum

FaceFrame face_frame(Face f) {
    switch (f) {
        case Face::U: return {{{0, 0, +1}}, {{0, +1, 0}}};
        case Face::L: return {{{-1, 0, 0}}, {{0, 0, +1}}};
        case Face::F: return {{{-1, 0, 0}}, {{0, +1, 0}}};
        case Face::R: return {{{-1, 0, 0}}, {{0, 0, -1}}};
        case Face::B: return {{{-1, 0, 0}}, {{0, -1, 0}}};
        case Face::D: return {{{0, 0, -1}}, {{0, +1, 0}}};
    }
    throw std::logic_error("face_frame");
}

int dot(const Vec3& a, const Vec3& b) {
    return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}

// Facelet index of the sticker of the cubie at `p` lying on `axis`.
int facelet_index(const Vec3& p, int axis) {
    Face f = face_of(axis, p.v[axis]);
    FaceFrame fr = face_frame(f);
    return sticker_index(f, dot(p, fr.row), dot(p, fr.col));
}

const char kColorCodes[6] = {'W', 'R', 'G', 'Y', 'O', 'B'};
const char* kColorWords[6] = {"white", "red", "green", "yellow", "orange", "blue"};

template <typename A>
void json_array_to(const nlohmann::json& j, const char* key, A& out, int lim) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != out.size())
        throw std::runtime_error(std::string("state json: bad field ") + key);
    for (size_t i = 0; i < out.size(); ++i) {
        int v = j[key][i].get<int>();
        if (v < 0 || v >= lim)
            throw std::runtime_error(std::string("state json: out of range in ") + key);
        out[i] = static_cast<uint8_t>(v);
    }
}

}  // namespace

int move_id(Move m) { return static_cast<int>(m.face) * 3 + static_cast<int>(m.turn); }

Move move_from_id(int id) {
    if (id < 0 || id >= kNumMoves) throw std::out_of_range("move_from_id");
    return {static_cast<Face>(id / 3), static_cast<Turn>(id % 3)};
}

Move inverse_move(Move m) {
    switch (m.turn) {
        case Turn::CW90: return {m.face, Turn::CCW90};
        case Turn::CCW90: return {m.face, Turn::CW90};
        case Turn::HALF: return m;
    }
    throw std::logic_error("inverse_move");
}

Face opposite_face(Face f) {
    int i = static_cast<int>(f);
    return static_cast<Face>(i % 2 == 0 ? i + 1 : i - 1);
}

std::string move_name(Move m) {
    static const char* faces = "UDLRFB";
    std::string s(1, faces[static_cast<int>(m.face)]);
    if (m.turn == Turn::CCW90) s += "rev";
    else if (m.turn == Turn::HALF) s += "2";
    return s;
}

std::optional<Move> move_from_name(const std::string& name) {
    if (name.empty()) return std::nullopt;
    std::string low;
    for (char c : name) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static const std::string faces = "udlrfb";
    auto fi = faces.find(low[0]);
    if (fi == std::string::npos) return std::nullopt;
    Face f = static_cast<Face>(fi);
    std::string rest = low.substr(1);
    if (rest.empty()) return Move{f, Turn::CW90};
    if (rest == "rev") return Move{f, Turn::CCW90};
    if (rest == "2") return Move{f, Turn::HALF};
    return std::nullopt;
}

const std::vector<Move>& ActionSet::moves() const {
    static const std::vector<Move> all = [] {
        std::vector<Move> v;
        for (int i = 0; i < kNumMoves; ++i) v.push_back(move_from_id(i));
        return v;
    }();
    static const std::vector<Move> quarter = [] {
        std::vector<Move> v;
        for (Move m : all)
            if (m.turn != Turn::HALF) v.push_back(m);
        return v;
    }();
    return variant == ActionSetVariant::QUARTER_12 ? quarter : all;
}

bool ActionSet::contains(Move m) const {
    return variant == ActionSetVariant::FULL_18 || m.turn != Turn::HALF;
}

std::optional<ActionSet> action_set_from_string(const std::string& s) {
    if (s == "12" || s == "quarter12" || s == "m1" || s == "d1") return ActionSet::quarter12();
    if (s == "18" || s == "full18" || s == "m2" || s == "d2") return ActionSet::full18();
    return std::nullopt;
}

CubeState CubeState::solved() {
    CubeState s;
    for (int i = 0; i < kNumCorners; ++i) { s.corner_perm[i] = static_cast<uint8_t>(i); s.corner_ori[i] = 0; }
    for (int i = 0; i < kNumEdges; ++i) { s.edge_perm[i] = static_cast<uint8_t>(i); s.edge_ori[i] = 0; }
    return s;
}

bool CubeState::is_solved() const { return *this == solved(); }

PackedState pack_state(const CubeState& s) {
    PackedState p;
    for (int i = 0; i < kNumCorners; ++i) p.hi = p.hi << 3 | s.corner_perm[i];
    for (int i = 0; i < kNumCorners; ++i) p.hi = p.hi << 2 | s.corner_ori[i];
    for (int i = 0; i < kNumEdges; ++i) p.hi = p.hi << 1 | s.edge_ori[i];
    for (int i = 0; i < kNumEdges; ++i) p.lo = p.lo << 4 | s.edge_perm[i];
    return p;
}

const MoveTable& move_table(Move m) { return geom().tables[move_id(m)]; }

CubeState apply_move(const CubeState& s, Move m) {
    const MoveTable& t = move_table(m);
    CubeState r;
    for (int i = 0; i < kNumCorners; ++i) {
        r.corner_perm[i] = s.corner_perm[t.cp[i]];
        r.corner_ori[i] = static_cast<uint8_t>((s.corner_ori[t.cp[i]] + t.co[i]) % 3);
    }
    for (int i = 0; i < kNumEdges; ++i) {
        r.edge_perm[i] = s.edge_perm[t.ep[i]];
        r.edge_ori[i] = s.edge_ori[t.ep[i]] ^ t.eo[i];
    }
    return r;
}

CubeState apply_plan(const CubeState& s, std::span<const Move> plan) {
    CubeState r = s;
    for (Move m : plan) r = apply_move(r, m);
    return r;
}

bool check_solvability(const CubeState& s) {
    std::array<bool, kNumCorners> cseen{};
    std::array<bool, kNumEdges> eseen{};
    int csum = 0, esum = 0;
    for (int i = 0; i < kNumCorners; ++i) {
        if (s.corner_perm[i] >= kNumCorners || cseen[s.corner_perm[i]]) return false;
        cseen[s.corner_perm[i]] = true;
        if (s.corner_ori[i] > 2) return false;
        csum += s.corner_ori[i];
    }
    for (int i = 0; i < kNumEdges; ++i) {
        if (s.edge_perm[i] >= kNumEdges || eseen[s.edge_perm[i]]) return false;
        eseen[s.edge_perm[i]] = true;
        if (s.edge_ori[i] > 1) return false;
        esum += s.edge_ori[i];
    }
    if (csum % 3 != 0 || esum % 2 != 0) return false;

    auto parity = [](const auto& perm) {
        int inv = 0;
        for (size_t i = 0; i < perm.size(); ++i)
            for (size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inv;
        return inv % 2;
    };
    return parity(s.corner_perm) == parity(s.edge_perm);
}

// ---------------------------------------------------------------------------

char color_code(Color c) { return kColorCodes[static_cast<int>(c)]; }

std::optional<Color> color_from_code(char c) {
    for (int i = 0; i < 6; ++i)
        if (kColorCodes[i] == std::toupper(static_cast<unsigned char>(c))) return static_cast<Color>(i);
    return std::nullopt;
}

const char* color_word(Color c) { return kColorWords[static_cast<int>(c)]; }

std::optional<Color> color_from_word(const std::string& w) {
    std::string low;
    for (char c : w) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (int i = 0; i < 6; ++i)
        if (low == kColorWords[i]) return static_cast<Color>(i);
    return std::nullopt;
}

int sticker_index(Face f, int row, int col) {
    return kNetPos[static_cast<int>(f)] * 9 + (row + 1) * 3 + (col + 1);
}

Color face_color(Face f) { return kFaceColor[static_cast<int>(f)]; }

StickerArray to_stickers(const CubeState& s) {
    const Geometry& g = geom();
    StickerArray arr;
    for (int f = 0; f < kNumFaces; ++f)
        arr.facelets[sticker_index(static_cast<Face>(f), 0, 0)] = kFaceColor[f];
    for (int j = 0; j < kNumCorners; ++j) {
        int cubie = s.corner_perm[j];
        int o = s.corner_ori[j];
        auto home = g.corner_solved_colors(cubie);
        for (int k = 0; k < 3; ++k)
            arr.facelets[facelet_index(kCornerPos[j], g.corner_axes[j][(k + o) % 3])] = home[k];
    }
    for (int j = 0; j < kNumEdges; ++j) {
        int cubie = s.edge_perm[j];
        int o = s.edge_ori[j];
        auto home = g.edge_solved_colors(cubie);
        for (int k = 0; k < 2; ++k)
            arr.facelets[facelet_index(kEdgePos[j], g.edge_axes[j][k ^ o])] = home[k];
    }
    return arr;
}

CubeState from_stickers(const StickerArray& arr) {
    const Geometry& g = geom();
    std::array<int, 6> counts{};
    for (Color c : arr.facelets) {
        int ci = static_cast<int>(c);
        if (ci < 0 || ci > 5) throw InvalidArray("invalid color value");
        ++counts[ci];
    }
    for (int i = 0; i < 6; ++i)
        if (counts[i] != 9)
            throw InvalidArray(std::string("color ") + kColorCodes[i] + " appears " +
                               std::to_string(counts[i]) + " times, expected 9");
    for (int f = 0; f < kNumFaces; ++f)
        if (arr.facelets[sticker_index(static_cast<Face>(f), 0, 0)] != kFaceColor[f])
            throw InvalidArray("center facelet does not match the fixed face-color convention");

    CubeState s;
    std::array<bool, kNumCorners> cused{};
    std::array<bool, kNumEdges> eused{};
    for (int j = 0; j < kNumCorners; ++j) {
        std::array<Color, 3> c;
        for (int k = 0; k < 3; ++k)
            c[k] = arr.facelets[facelet_index(kCornerPos[j], g.corner_axes[j][k])];
        auto key = c;
        std::sort(key.begin(), key.end());
        auto it = g.corner_by_colors.find(key);
        if (it == g.corner_by_colors.end())
            throw InvalidArray("impossible corner color combination at " + kCornerNames[j]);
        int cubie = it->second;
        if (cused[cubie]) throw InvalidArray("duplicate corner cubie " + kCornerNames[cubie]);
        cused[cubie] = true;
        auto home = g.corner_solved_colors(cubie);
        int ori = -1;
        for (int o = 0; o < 3; ++o) {
            bool match = true;
            for (int k = 0; k < 3; ++k)
                if (c[(k + o) % 3] != home[k]) { match = false; break; }
            if (match) { ori = o; break; }
        }
        if (ori < 0) throw InvalidArray("mirrored corner cubie at " + kCornerNames[j]);
        s.corner_perm[j] = static_cast<uint8_t>(cubie);
        s.corner_ori[j] = static_cast<uint8_t>(ori);
    }
    for (int j = 0; j < kNumEdges; ++j) {
        std::array<Color, 2> c;
        for (int k = 0; k < 2; ++k)
            c[k] = arr.facelets[facelet_index(kEdgePos[j], g.edge_axes[j][k])];
        auto key = c;
        std::sort(key.begin(), key.end());
        auto it = g.edge_by_colors.find(key);
        if (it == g.edge_by_colors.end())
            throw InvalidArray("impossible edge color combination at " + kEdgeNames[j]);
        int cubie = it->second;
        if (eused[cubie]) throw InvalidArray("duplicate edge cubie " + kEdgeNames[cubie]);
        eused[cubie] = true;
        auto home = g.edge_solved_colors(cubie);
        s.edge_perm[j] = static_cast<uint8_t>(cubie);
        s.edge_ori[j] = c[0] == home[0] ? 0 : 1;
    }
    return s;
}

FactoredState to_factored(const CubeState& s) {
    FactoredState f;
    for (int i = 0; i < kNumCorners; ++i)
        f.cubies[i] = {s.corner_perm[i], s.corner_ori[i]};
    for (int i = 0; i < kNumEdges; ++i)
        f.cubies[kNumCorners + i] = {s.edge_perm[i], s.edge_ori[i]};
    return f;
}

CubeState from_factored(const FactoredState& f) {
    CubeState s;
    std::array<bool, kNumCorners> cused{};
    std::array<bool, kNumEdges> eused{};
    for (int i = 0; i < kNumCorners; ++i) {
        auto [occ, ori] = f.cubies[i];
        if (occ >= kNumCorners) throw InvalidFactored("corner occupant out of range");
        if (cused[occ]) throw InvalidFactored("corner cubie occupies two slots");
        if (ori > 2) throw InvalidFactored("corner orientation out of range");
        cused[occ] = true;
        s.corner_perm[i] = occ;
        s.corner_ori[i] = ori;
    }
    for (int i = 0; i < kNumEdges; ++i) {
        auto [occ, ori] = f.cubies[kNumCorners + i];
        if (occ >= kNumEdges) throw InvalidFactored("edge occupant out of range");
        if (eused[occ]) throw InvalidFactored("edge cubie occupies two slots");
        if (ori > 1) throw InvalidFactored("edge orientation out of range");
        eused[occ] = true;
        s.edge_perm[i] = occ;
        s.edge_ori[i] = ori;
    }
    return s;
}

// ---------------------------------------------------------------------------

const std::string& corner_predicate(int slot) { return kCornerNames[slot]; }
const std::string& edge_predicate(int slot) { return kEdgeNames[slot]; }

int corner_slot_from_predicate(const std::string& name) {
    for (int i = 0; i < kNumCorners; ++i)
        if (kCornerNames[i] == name) return i;
    return -1;
}

int edge_slot_from_predicate(const std::string& name) {
    for (int i = 0; i < kNumEdges; ++i)
        if (kEdgeNames[i] == name) return i;
    return -1;
}

std::array<int, 3> corner_param_axes(int) { return {0, 2, 1}; }

std::array<int, 2> edge_param_axes(int slot) {
    // parameter order follows the slot's orientation-reference axis order
    auto a = geom().edge_axes[slot];
    return {a[0], a[1]};
}

std::pair<int, int> swapped_axes(Face f) {
    int fa = kFaceAxis[static_cast<int>(f)];
    return {(fa + 1) % 3, (fa + 2) % 3};
}

std::array<Color, 3> corner_param_colors(const CubeState& s, int slot) {
    const Geometry& g = geom();
    int cubie = s.corner_perm[slot];
    int o = s.corner_ori[slot];
    auto home = g.corner_solved_colors(cubie);
    std::array<Color, 3> by_axis{};
    for (int k = 0; k < 3; ++k)
        by_axis[g.corner_axes[slot][(k + o) % 3]] = home[k];
    auto axes = corner_param_axes(slot);
    return {by_axis[axes[0]], by_axis[axes[1]], by_axis[axes[2]]};
}

std::array<Color, 2> edge_param_colors(const CubeState& s, int slot) {
    const Geometry& g = geom();
    int cubie = s.edge_perm[slot];
    int o = s.edge_ori[slot];
    auto home = g.edge_solved_colors(cubie);
    std::array<Color, 3> by_axis{};
    for (int k = 0; k < 2; ++k)
        by_axis[g.edge_axes[slot][k ^ o]] = home[k];
    auto axes = edge_param_axes(slot);
    return {by_axis[axes[0]], by_axis[axes[1]]};
}

CubeState state_from_cubelet_colors(
    const std::array<std::array<Color, 3>, kNumCorners>& corners,
    const std::array<std::array<Color, 2>, kNumEdges>& edges) {
    const Geometry& g = geom();
    CubeState s;
    std::array<bool, kNumCorners> cused{};
    std::array<bool, kNumEdges> eused{};
    for (int j = 0; j < kNumCorners; ++j) {
        std::array<Color, 3> by_axis{};
        auto axes = corner_param_axes(j);
        for (int k = 0; k < 3; ++k) by_axis[axes[k]] = corners[j][k];
        std::array<Color, 3> c;
        for (int k = 0; k < 3; ++k) c[k] = by_axis[g.corner_axes[j][k]];
        auto key = c;
        std::sort(key.begin(), key.end());
        auto it = g.corner_by_colors.find(key);
        if (it == g.corner_by_colors.end())
            throw InvalidArray("impossible corner color combination at " + kCornerNames[j]);
        int cubie = it->second;
        if (cused[cubie]) throw InvalidArray("duplicate corner cubie " + kCornerNames[cubie]);
        cused[cubie] = true;
        auto home = g.corner_solved_colors(cubie);
        int ori = -1;
        for (int o = 0; o < 3; ++o) {
            bool match = true;
            for (int k = 0; k < 3; ++k)
                if (c[(k + o) % 3] != home[k]) { match = false; break; }
            if (match) { ori = o; break; }
        }
        if (ori < 0) throw InvalidArray("mirrored corner cubie at " + kCornerNames[j]);
        s.corner_perm[j] = static_cast<uint8_t>(cubie);
        s.corner_ori[j] = static_cast<uint8_t>(ori);
    }
    for (int j = 0; j < kNumEdges; ++j) {
        std::array<Color, 3> by_axis{};
        auto axes = edge_param_axes(j);
        for (int k = 0; k < 2; ++k) by_axis[axes[k]] = edges[j][k];
        std::array<Color, 2> c;
        for (int k = 0; k < 2; ++k) c[k] = by_axis[g.edge_axes[j][k]];
        auto key = c;
        std::sort(key.begin(), key.end());
        auto it = g.edge_by_colors.find(key);
        if (it == g.edge_by_colors.end())
            throw InvalidArray("impossible edge color combination at " + kEdgeNames[j]);
        int cubie = it->second;
        if (eused[cubie]) throw InvalidArray("duplicate edge cubie " + kEdgeNames[cubie]);
        eused[cubie] = true;
        auto home = g.edge_solved_colors(cubie);
        s.edge_perm[j] = static_cast<uint8_t>(cubie);
        s.edge_ori[j] = c[0] == home[0] ? 0 : 1;
    }
    return s;
}

// ---------------------------------------------------------------------------

nlohmann::json state_to_json(const CubeState& s) {
    nlohmann::json j;
    j["corner_perm"] = s.corner_perm;
    j["corner_ori"] = s.corner_ori;
    j["edge_perm"] = s.edge_perm;
    j["edge_ori"] = s.edge_ori;
    return j;
}

CubeState state_from_json(const nlohmann::json& j) {
    CubeState s;
    json_array_to(j, "corner_perm", s.corner_perm, kNumCorners);
    json_array_to(j, "corner_ori", s.corner_ori, 3);
    json_array_to(j, "edge_perm", s.edge_perm, kNumEdges);
    json_array_to(j, "edge_ori", s.edge_ori, 2);
    return s;
}

nlohmann::json stickers_to_json(const StickerArray& a) {
    nlohmann::json j = nlohmann::json::array();
    for (Color c : a.facelets) j.push_back(std::string(1, color_code(c)));
    return j;
}

StickerArray stickers_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 54)
        throw InvalidArray("sticker json must be a 54-element array");
    StickerArray a;
    for (int i = 0; i < 54; ++i) {
        std::string s = j[i].get<std::string>();
        auto c = s.size() == 1 ? color_from_code(s[0]) : std::nullopt;
        if (!c) throw InvalidArray("bad color code '" + s + "' at index " + std::to_string(i));
        a.facelets[i] = *c;
    }
    return a;
}

}  // namespace rcplan
