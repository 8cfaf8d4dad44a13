#pragma once

#define PANELUR_VERSION "0.1.0"
