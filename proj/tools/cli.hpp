#pragma once

namespace frc::cli {
int run(int argc, char** argv);
}
