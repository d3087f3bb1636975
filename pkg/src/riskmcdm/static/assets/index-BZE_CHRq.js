(function(){const n=document.createElement("link").relList;if(n&&n.supports&&n.supports("modulepreload"))return;for(const r of document.querySelectorAll('link[rel="modulepreload"]'))s(r);new MutationObserver(r=>{for(const i of r)if(i.type==="childList")for(const c of i.addedNodes)c.tagName==="LINK"&&c.rel==="modulepreload"&&s(c)}).observe(document,{childList:!0,subtree:!0});function t(r){const i={};return r.integrity&&(i.integrity=r.integrity),r.referrerPolicy&&(i.referrerPolicy=r.referrerPolicy),r.crossOrigin==="use-credentials"?i.credentials="include":r.crossOrigin==="anonymous"?i.credentials="omit":i.credentials="same-origin",i}function s(r){if(r.ep)return;r.ep=!0;const i=t(r);fetch(r.href,i)}})();class w extends Error{constructor(n,t,s,r=null){super(s),this.status=n,this.code=t,this.details=r,this.name="ApiError"}}async function $(e,n,t){const s=await fetch(n,{method:e,headers:t===void 0?{}:{"content-type":"application/json"},body:t===void 0?void 0:JSON.stringify(t)}),r=await s.text();let i=null;try{i=r?JSON.parse(r):null}catch{i=null}if(!s.ok){const c=(i==null?void 0:i.error)??{};throw new w(s.status,c.code??"http_error",c.message??`${s.status} ${s.statusText}`,c.details??null)}return i}function J(){return $("GET","/api/hierarchies")}function k(e){return $("POST","/api/sessions",{expert:e})}function z(e){return $("GET",`/api/sessions/${e}`)}function B(e,n){return $("PUT",`/api/sessions/${e}/judgments`,n)}function M(e){return $("POST",`/api/sessions/${e}/finalize`)}function I(){const e=[];for(let n=9;n>=2;n--)e.push({side:"positive",code:n,value:String(n)});e.push({side:"equal",code:1,value:"1"});for(let n=2;n<=9;n++)e.push({side:"negative",code:n,value:`1/${n}`});return e}function G(e){const n=e.indexOf("/");if(n>=0){const s=Number(e.slice(n+1));return s===1?{side:"equal",code:1}:{side:"negative",code:s}}const t=Number(e);return t===1?{side:"equal",code:1}:{side:"positive",code:t}}function v(e,n){return`${e}:${n}`}function K(e){const n=[];for(let t=0;t<e;t++)for(let s=t+1;s<e;s++)n.push([t,s]);return n}function W(e){if(!e)return new Set;const[n,t,s]=e.indices;return new Set([v(n,t),v(n,s),v(t,s)])}function D(e){return e.complete&&e.consistency!==null&&!e.consistency.acceptable?e.worst_triad:null}function H(e,n){const t=new Map;for(const r of n)t.set(v(r.i,r.j),r.value);const s=W(D(e));return K(e.items.length).map(([r,i])=>{const c=t.get(v(r,i));return{i:r,j:i,leftLabel:e.items[r].label,rightLabel:e.items[i].label,selected:c===void 0?null:G(c),inWorstTriad:s.has(v(r,i))}})}function U(e){return!e.complete||e.consistency===null?null:{text:`CR ${String(e.consistency.cr)}`,acceptable:e.consistency.acceptable}}function V(e){return e.state==="open"&&e.all_acceptable}function Y(e){const n=[];for(const t of e.nodes)t.complete?t.consistency!==null&&!t.consistency.acceptable&&n.push(`${t.node_id}: CR ${String(t.consistency.cr)} is not below 0.10`):n.push(`${t.node_id}: ${t.remaining_pairs.length} pair(s) unanswered`);return n}function T(e){return Math.round(e.completion*100)}function Q(e,n,t,s,r){const i={...e.judgments},c=(i[n]??[]).filter(l=>l.i!==t||l.j!==s);return c.push({i:t,j:s,value:r}),c.sort((l,d)=>l.i-d.i||l.j-d.j),i[n]=c,{...e,judgments:i}}function X(e,n){return{...e,state:n.state,completion:n.completion,all_acceptable:n.all_acceptable,nodes:e.nodes.map(t=>t.node_id===n.node.node_id?n.node:t)}}function a(e,n,t){const s=document.createElement(e);return n&&(s.className=n),t!==void 0&&(s.textContent=t),s}function E(e,n){const t=a("div",e.retry?"banner banner-retry":"banner banner-error");if(t.append(a("span","banner-message",e.message)),e.retry){const s=a("button","banner-retry-button","Retry");s.type="button",s.addEventListener("click",()=>n.onRetry()),t.append(s)}return t}function Z(e,n,t,s){const r=a("section","node");r.dataset.node=e.node_id;const i=a("h2","node-heading");i.append(a("span","node-title",`${e.node_id} — ${e.answered_pairs}/${e.total_pairs} pairs`));const c=U(e);c&&i.append(a("span",c.acceptable?"cr-badge ok":"cr-badge bad",c.text)),r.append(i);const l=D(e);if(l&&r.append(a("p","triad-note",`Most inconsistent triple: ${l.items.join(", ")} (discrepancy ${l.discrepancy.toFixed(4)}). Revise the highlighted rows.`)),e.total_pairs===0)return r.append(a("p","node-empty","Single item, nothing to compare.")),r;const d=a("table","grid"),p=a("thead"),y=a("tr");y.append(a("th","pair-label"));const f=a("th","scale-side","Positive");f.colSpan=8;const R=a("th","scale-equal","Equality"),O=a("th","scale-side","Negative");O.colSpan=8,y.append(f,R,O),y.append(a("th","pair-label")),p.append(y),d.append(p);const q=a("tbody"),A=I();for(const u of H(e,n)){const g=a("tr",u.inWorstTriad?"pair-row triad":"pair-row");g.dataset.i=String(u.i),g.dataset.j=String(u.j),g.append(a("th","pair-label left",u.leftLabel));for(const b of A){const C=a("td",b.side==="equal"?"cell-slot equal":"cell-slot"),m=a("button","cell",String(b.code));m.type="button",m.dataset.value=b.value,m.dataset.side=b.side,u.selected&&u.selected.side===b.side&&u.selected.code===b.code&&m.classList.add("selected"),m.disabled=s,m.addEventListener("click",()=>t.onSelect(e.node_id,u.i,u.j,b.value)),C.append(m),g.append(C)}g.append(a("th","pair-label right",u.rightLabel)),q.append(g)}return d.append(q),r.append(d),r}function ee(e,n){const{payload:t}=e,s=a("div","session"),r=a("header","session-header");r.append(a("h1",void 0,e.goal)),r.append(a("p","session-meta",`Expert: ${t.expert.name} · Session ${t.id.slice(0,8)} · ${t.state}`));const i=a("div","progress"),c=a("div","progress-bar");c.style.width=`${T(t)}%`,i.append(c),r.append(i),r.append(a("p","progress-text",`${T(t)}% of pairs answered`)),s.append(r),e.banner&&s.append(E(e.banner,n));const l=t.state==="finalized"||e.exportDoc!==null;for(const f of t.nodes)s.append(Z(f,t.judgments[f.node_id]??[],n,l||e.busy));const d=a("footer","session-footer"),p=a("button","finalize",t.state==="finalized"?"Finalized":"Finalize session");p.type="button",p.disabled=!(V(t)&&!e.busy&&e.exportDoc===null);const y=Y(t);if(t.state==="finalized"?p.title="Session already finalized":y.length>0?p.title=`Blocked by: ${y.join("; ")}`:p.title="All nodes are consistent",p.addEventListener("click",()=>n.onFinalize()),d.append(p),s.append(d),e.exportDoc!==null){const f=a("section","export");f.append(a("h2",void 0,"Finalized questionnaire")),f.append(a("pre","export-json",JSON.stringify(e.exportDoc,null,2))),s.append(f)}return s}function ne(e,n){const t=a("div","create");t.append(a("h1",void 0,e)),t.append(a("p",void 0,"Start a session and compare the criteria pairwise on the 1..9 scale."));const s=a("form","create-form"),r=a("input");r.name="name",r.placeholder="Expert name",r.required=!0;const i=a("input");i.name="experience_years",i.type="number",i.min="0",i.step="0.5",i.placeholder="Years of experience";const c=a("input");c.name="degree",c.placeholder="Degree";const l=a("button",void 0,"Start session");return l.type="submit",s.append(r,i,c,l),s.addEventListener("submit",d=>{d.preventDefault(),r.value.trim()&&n({name:r.value.trim(),experience_years:Number(i.value||0),degree:c.value.trim()})}),t.append(s),t}const te=2e3,re="Pairwise judgment questionnaire",S=document.getElementById("app");let j=re,o=null,x;function se(){const e=/^#\/session\/([0-9a-f]{32})$/.exec(location.hash);return e?e[1]:null}const P={onSelect(e,n,t,s){ce(e,n,t,s)},onFinalize(){le()},onRetry(){ae()}};function h(){S.replaceChildren(),o!==null&&S.append(ee(o,P))}function _(){x!==void 0&&(clearInterval(x),x=void 0)}function ie(){_(),x=setInterval(()=>{oe()},te)}async function oe(){var e;if(!(o===null||o.busy||o.payload.state!=="open"||o.exportDoc!==null))try{const n=await z(o.payload.id);o.payload=n,(e=o.banner)!=null&&e.retry&&(o.banner=null),h()}catch(n){n instanceof w||(o.banner={message:"Service unreachable. Will keep retrying.",retry:!0},h())}}async function ae(){if(o===null){L();return}try{o.payload=await z(o.payload.id),o.banner=null}catch(e){o.banner=F(e,"Could not refresh the session.")}h()}function F(e,n){return e instanceof w?{message:`${n} ${e.message}`,retry:!1}:{message:"Service unreachable. Check the connection and retry.",retry:!0}}async function ce(e,n,t,s){if(o===null||o.busy||o.payload.state!=="open"||o.exportDoc!==null)return;const r=o.payload;o.payload=Q(r,e,n,t,s),o.busy=!0,o.banner=null,h();try{const i=await B(r.id,{node_id:e,i:n,j:t,value:s});o.payload=X(o.payload,i),o.busy=!1}catch(i){o.payload=r,o.busy=!1,o.banner=i instanceof w?{message:`Judgment rejected: ${i.message}`,retry:!1}:{message:"Service unreachable. The judgment was not saved.",retry:!0}}h()}async function le(){var e;if(!(o===null||o.busy||o.exportDoc!==null)){o.busy=!0,h();try{const n=await M(o.payload.id);o.busy=!1,o.exportDoc=n,o.payload={...o.payload,state:"finalized"},o.banner=null,_()}catch(n){if(o.busy=!1,n instanceof w){const t=(e=n.details)==null?void 0:e.blocking,s=t!=null&&t.length?` Blocked by: ${t.map(r=>`${r.node_id} (${r.reason})`).join(", ")}.`:"";o.banner={message:`Finalize refused: ${n.message}.${s}`,retry:!1}}else o.banner={message:"Service unreachable. Finalize not applied.",retry:!0}}h()}}function de(){o=null,_(),S.replaceChildren(ne(j,e=>{(async()=>{try{const n=await k(e);N(n),location.hash=`#/session/${n.id}`}catch(n){S.prepend(E(F(n,"Could not create the session."),P))}})()}))}function N(e){o={payload:e,goal:j,banner:null,busy:!1,exportDoc:null},h(),e.state==="open"&&ie()}async function L(){try{const e=await J();e.hierarchies.length>0&&(j=e.hierarchies[0].goal);const n=se();if(n===null){de();return}N(await z(n))}catch(e){o=null,_();const n=E(F(e,"Could not load the session."),{...P,onRetry(){L()}});S.replaceChildren(n)}}window.addEventListener("hashchange",()=>{L()});L();
