// cli.hpp - command-line surface
#pragma once

#include "krho/cli_impl.hpp"
