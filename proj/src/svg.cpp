#include "fescr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

namespace fescr
{
    namespace
    {
        constexpr double kPxPerMeter = 100.0;
        constexpr double kMarginMeters = 1.0;

        struct Frame
        {
            double min_x{std::numeric_limits<double>::infinity ()};
            double min_y{std::numeric_limits<double>::infinity ()};
            double max_x{-std::numeric_limits<double>::infinity ()};
            double max_y{-std::numeric_limits<double>::infinity ()};

            void add (const Point2 &p)
            {
                min_x = std::min (min_x, p.x);
                min_y = std::min (min_y, p.y);
                max_x = std::max (max_x, p.x);
                max_y = std::max (max_y, p.y);
            }

            [[nodiscard]] double px (double x) const { return (x - min_x) * kPxPerMeter; }
            [[nodiscard]] double py (double y) const { return (max_y - y) * kPxPerMeter; }
        };

        void write_points (std::ostream &out, const Frame &f, const std::vector<Point2> &pts)
        {
            for (std::size_t i = 0; i < pts.size (); ++i)
                out << (i ? " " : "") << f.px (pts[i].x) << ',' << f.py (pts[i].y);
        }
    } // namespace

    void write_snapshot_svg (std::ostream &out, const SnapshotView &view)
    {
        Frame f;
        f.add (view.pose.position);
        if (view.world != nullptr)
            for (const auto &s : view.world->segments ())
            {
                f.add (s.a);
                f.add (s.b);
            }
        if (view.global != nullptr)
            for (const auto &p : view.global->waypoints ())
                f.add (p);
        if (view.chain != nullptr)
            for (const auto &c : view.chain->circles)
            {
                f.add (c.center () + Vector2{c.radius (), c.radius ()});
                f.add (c.center () - Vector2{c.radius (), c.radius ()});
            }
        f.min_x -= kMarginMeters;
        f.min_y -= kMarginMeters;
        f.max_x += kMarginMeters;
        f.max_y += kMarginMeters;

        const auto flags = out.flags ();
        const auto precision = out.precision ();
        out << std::setprecision (std::numeric_limits<double>::max_digits10);

        const double width = (f.max_x - f.min_x) * kPxPerMeter;
        const double height = (f.max_y - f.min_y) * kPxPerMeter;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
            << ' ' << height << "\">\n";
        out << "<title>cycle " << view.cycle << "</title>\n";
        out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

        if (view.world != nullptr)
        {
            out << "<g id=\"walls\" stroke=\"black\" stroke-width=\"4\">\n";
            for (const auto &s : view.world->segments ())
                out << "<line x1=\"" << f.px (s.a.x) << "\" y1=\"" << f.py (s.a.y) << "\" x2=\"" << f.px (s.b.x) << "\" y2=\"" << f.py (s.b.y)
                    << "\"/>\n";
            out << "</g>\n";
        }

        if (view.global != nullptr)
        {
            out << "<polyline id=\"global_path\" fill=\"none\" stroke=\"green\" stroke-width=\"2\" stroke-dasharray=\"6,4\" points=\"";
            write_points (out, f, view.global->waypoints ());
            out << "\"/>\n";
        }

        if (view.trajectory.size () > 1)
        {
            out << "<polyline id=\"trajectory\" fill=\"none\" stroke=\"orange\" stroke-width=\"2\" points=\"";
            write_points (out, f, view.trajectory);
            out << "\"/>\n";
        }

        if (view.chain != nullptr)
        {
            out << "<g id=\"chain\" fill=\"steelblue\" fill-opacity=\"0.15\" stroke=\"steelblue\" stroke-width=\"2\">\n";
            for (const auto &c : view.chain->circles)
                out << "<circle cx=\"" << f.px (c.center ().x) << "\" cy=\"" << f.py (c.center ().y) << "\" r=\"" << c.radius () * kPxPerMeter
                    << "\"/>\n";
            out << "</g>\n";
            out << "<polyline id=\"centers\" fill=\"none\" stroke=\"navy\" stroke-width=\"2\" points=\"";
            write_points (out, f, view.chain->centers ());
            out << "\"/>\n";
        }

        // robot footprint, length along the heading
        const double hx = 0.5 * view.footprint.length ();
        const double hy = 0.5 * view.footprint.width ();
        const Vector2 ax = Vector2::from_polar (1.0, view.pose.yaw);
        const Vector2 ay{-ax.dy, ax.dx};
        const Point2 &c = view.pose.position;
        const std::vector<Point2> corners = {c + ax * hx + ay * hy, c - ax * hx + ay * hy, c - ax * hx - ay * hy, c + ax * hx - ay * hy};
        out << "<polygon id=\"robot\" fill=\"crimson\" fill-opacity=\"0.6\" stroke=\"crimson\" points=\"";
        write_points (out, f, corners);
        out << "\"/>\n";
        out << "</svg>\n";

        out.flags (flags);
        out.precision (precision);
    }

} // namespace fescr
