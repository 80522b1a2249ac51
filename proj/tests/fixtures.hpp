// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared Verilog fixtures for the test suites.

namespace fixtures {

// 3-state FSM: S0 --in--> S1 --> S2 --> S0, S0 --!in--> S0.
// 2-bit state register, async active-high reset, `out` deliberately not
// reset.
inline constexpr const char* kFsm3 = R"(
module fsm(clk, rst, in, out);
  input clk;
  input rst;
  input in;
  output out;
  reg out;
  reg [1:0] state;
  localparam S0 = 2'b00;
  localparam S1 = 2'b01;
  localparam S2 = 2'b10;
  always @(posedge clk or posedge rst) begin
    if (rst) begin
      state <= S0;
    end else begin
      case (state)
        S0: if (in) state <= S1; else state <= S0;
        S1: state <= S2;
        S2: state <= S0;
      endcase
    end
  end
  always @(posedge clk) begin
    out <= state == S2;
  end
endmodule
)";

inline constexpr const char* kMinimal = "module m(input clk); endmodule";

// two-process FSM with a companion next-state register
inline constexpr const char* kFsmTwoProcess = R"(
module handshake(clk, rst_n, req, ack);
  input clk;
  input rst_n;
  input req;
  output ack;
  reg ack;
  reg [1:0] cur;
  reg [1:0] nxt;
  localparam IDLE = 2'b00;
  localparam BUSY = 2'b01;
  localparam DONE = 2'b10;
  always @(*) begin
    case (cur)
      IDLE: if (req) nxt = BUSY; else nxt = IDLE;
      BUSY: nxt = DONE;
      DONE: nxt = IDLE;
      default: nxt = IDLE;
    endcase
  end
  always @(posedge clk or negedge rst_n) begin
    if (!rst_n) cur <= IDLE;
    else cur <= nxt;
  end
  always @(posedge clk) begin
    ack <= cur == DONE;
  end
endmodule
)";

// FSM on raw literals, no localparam labels
inline constexpr const char* kFsmRawLiterals = R"(
module rawfsm(clk, rst, go, st);
  input clk;
  input rst;
  input go;
  output [1:0] st;
  reg [1:0] st;
  always @(posedge clk or posedge rst) begin
    if (rst) st <= 2'b00;
    else begin
      case (st)
        2'b00: if (go) st <= 2'b01; else st <= 2'b00;
        2'b01: st <= 2'b00;
      endcase
    end
  end
endmodule
)";

// case on an input, not a register: not an FSM
inline constexpr const char* kCaseOnInput = R"(
module decoder(sel, y);
  input [1:0] sel;
  output reg [3:0] y;
  always @(*) begin
    case (sel)
      2'b00: y = 4'b0001;
      2'b01: y = 4'b0010;
      2'b10: y = 4'b0100;
      default: y = 4'b1000;
    endcase
  end
endmodule
)";

// two non-preferred clock candidates
inline constexpr const char* kTwoClocks = R"(
module dualclk(clk_a, clk_b, d, qa, qb);
  input clk_a;
  input clk_b;
  input d;
  output reg qa;
  output reg qb;
  always @(posedge clk_a) qa <= d;
  always @(posedge clk_b) qb <= d;
endmodule
)";

// no always block at all
inline constexpr const char* kCombinational = R"(
module adder(a, b, y);
  input [3:0] a;
  input [3:0] b;
  output [4:0] y;
  assign y = a + b;
endmodule
)";

// fully reset-initialized registers
inline constexpr const char* kFullyInitialized = R"(
module initreg(clk, rst, d, q);
  input clk;
  input rst;
  input d;
  output reg q;
  always @(posedge clk or posedge rst) begin
    if (rst) q <= 1'b0;
    else q <= d;
  end
endmodule
)";

// registers never reset, module has no reset signal
inline constexpr const char* kNoReset = R"(
module noreset(clk, d, q);
  input clk;
  input d;
  output reg q;
  always @(posedge clk) q <= d;
endmodule
)";

}  // namespace fixtures
