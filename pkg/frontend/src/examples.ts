/**
 * Bundled example models, mirroring the repository fixtures (a test
 * guards against drift). Each entry loads into the editor; product
 * examples also carry the component sources and intrusion pairs.
 */

export interface BundledExample {
  title: string;
  source: string;
  product?: {
    leftSource: string;
    rightSource: string;
    intrusionsSource: string;
    mode: "async" | "sync";
  };
}

export const VENDING_SOURCE = `// Vending machine: accepts at most 1 euro, then must dispense.
// Firing "1eur" disables both coin edges; each "0.5eur" arms a
// self-disabling loop so the second coin shuts the slot down.
rg VM {
  init Insert;
  e1: Insert --> Chocolate by "1eur";
  e2: Insert --> Coffee    by "0.5eur";
  e3: Chocolate --> Insert by "get-chocolate";
  e4: Coffee --> Insert    by "get-coffee";
  h1: e1 disables e1;  h2: e1 disables e2;  h3: e2 disables e1;
  h4: e2 disables e2;  h5: e2 enables h4;
  inactive h4;
}
`;

export const FTS_SOURCE = `// Message router with a feature-selection phase: safe/unsafe pick the
// routing edge, encrypt/dencrypt pick which send edge survives at the
// unsafe router. All edges start active; feature actions reconfigure.
rg FTS {
  init setup;
  g1: setup --> setup by "safe";
  g2: setup --> setup by "unsafe";
  g3: setup --> setup by "encrypt";
  g4: setup --> setup by "dencrypt";
  g5: setup --> ready by "-";
  g6: ready --> setup by "-";
  g7: ready --> received by "receive";
  g8: received --> routed-safe by "route";
  g9: received --> routed-unsafe by "route";
  g10: routed-safe --> sent by "send";
  g11: routed-unsafe --> sent-encrypt by "send";
  g12: routed-unsafe --> sent by "send";
  g13: sent --> ready by "ready";
  g14: sent-encrypt --> ready by "ready";
  h1: g1 enables g8;   h2: g1 disables g9;
  h3: g2 disables g8;  h4: g2 enables g9;
  h5: g3 enables g11;  h6: g3 disables g12;
  h7: g4 disables g11; h8: g4 enables g12;
}
`;

export const USER_SOURCE = `// A user that inserts a coin and collects the product.
rg Usr {
  init User;
  u1: User --> Select by "coin";
  u2: Select --> User by "get-product";
}
`;

export const USER_VM_INTRUSIONS = `// Paying only half price intrudes on the user: the vending machine's
// 0.5eur edge withdraws the user's get-product edge.
right.e2 disables left.u2;
`;

export const VM_VS_UNFOLDED_SOURCE = `// The vending machine against a plain hyper-edge-free transcription of
// its own unfolded behaviour; the two must be bisimilar.
rg VM {
  init Insert;
  e1: Insert --> Chocolate by "1eur";
  e2: Insert --> Coffee    by "0.5eur";
  e3: Chocolate --> Insert by "get-chocolate";
  e4: Coffee --> Insert    by "get-coffee";
  h1: e1 disables e1;  h2: e1 disables e2;  h3: e2 disables e1;
  h4: e2 disables e2;  h5: e2 enables h4;
  inactive h4;
}
~
rg Unfolded {
  init Insert0;
  t1: Insert0 --> Chocolate by "1eur";
  t2: Chocolate --> InsertA by "get-chocolate";
  t3: Insert0 --> Coffee1 by "0.5eur";
  t4: Coffee1 --> Insert1 by "get-coffee";
  t5: Insert1 --> Coffee2 by "0.5eur";
  t6: Coffee2 --> InsertB by "get-coffee";
}
`;

export const EXAMPLES: Record<string, BundledExample> = {
  "vending machine": { title: "Vending machine (two products)", source: VENDING_SOURCE },
  "featured transition system": { title: "Featured transition system (message router)", source: FTS_SOURCE },
  "vending machine ~ unfolded": {
    title: "Vending machine against its unfolded LTS",
    source: VM_VS_UNFOLDED_SOURCE,
  },
  "user || vending machine": {
    title: "User intruded by the vending machine",
    source: USER_SOURCE,
    product: {
      leftSource: USER_SOURCE,
      rightSource: VENDING_SOURCE,
      intrusionsSource: USER_VM_INTRUSIONS,
      mode: "async",
    },
  },
};
